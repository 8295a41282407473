// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "speaking/anim/animation.hpp"
#include "speaking/voice/audio.hpp"

namespace speaking {

// Decoded contents of a container produced by mux_mp4 (or a compatible
// backend): JPEG video samples plus an optional 16-bit PCM audio track.
struct Mp4Media {
    FrameSequence video;
    AudioSegment audio;
    bool has_audio = false;
    double declared_duration_s = 0.0;
};

// Writes an ISO base-media file: one video track of JPEG samples
// ('mp4v' with a JPEG decoder config) and, when audio is given, one
// little-endian PCM track ('sowt'). Output bytes are a pure function of the
// inputs — no timestamps or randomness — so identical runs produce
// identical files.
std::string mux_mp4(const FrameSequence& video, const AudioSegment* audio,
                    int jpeg_quality = 90);
void write_mp4(const std::filesystem::path& path, const FrameSequence& video,
               const AudioSegment* audio, int jpeg_quality = 90);

Mp4Media demux_mp4(std::string_view bytes);
Mp4Media read_mp4(const std::filesystem::path& path);

// Baseline JPEG codec for individual frames (RGB or grayscale).
std::string encode_jpeg(const ImageBuffer& img, int quality = 90);
ImageBuffer decode_jpeg(std::string_view bytes);

}  // namespace speaking
