// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace speaking {

// Mono amplitude sequence in [-1, 1].
struct AudioSegment {
    int sample_rate = 16000;
    std::vector<float> samples;

    double duration_s() const {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
    bool operator==(const AudioSegment&) const = default;
};

// 16-bit PCM WAV, single channel. Multi-channel or non-PCM input is
// rejected; the TTS backend protocol promises mono.
std::string encode_wav(const AudioSegment& a);
AudioSegment decode_wav(std::string_view bytes);
void write_wav(const std::filesystem::path& path, const AudioSegment& a);
AudioSegment read_wav(const std::filesystem::path& path);

}  // namespace speaking
