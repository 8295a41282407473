// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "speaking/core/types.hpp"
#include "speaking/voice/audio.hpp"

namespace speaking {

struct VoiceChoice {
    std::string voice_id;
    Gender gender = Gender::female;
    std::string locale = "en-US";

    bool operator==(const VoiceChoice&) const = default;
};

// American English voices, female entries first so they win first-match
// selection for their gender.
std::vector<VoiceChoice> default_voice_catalog();

// First catalog entry whose gender matches; deterministic under a fixed
// catalog order. Throws NoVoiceForGender when nothing matches.
VoiceChoice select_voice(Gender gender, const std::vector<VoiceChoice>& catalog);

class TtsBackend {
public:
    virtual ~TtsBackend() = default;
    virtual std::string name() const = 0;
    // Renders `text` with the given voice as mono PCM audio.
    virtual AudioSegment render(const std::string& text, const std::string& voice_id) = 0;

    int calls() const { return calls_; }

protected:
    int calls_ = 0;
};

// Validates the text precondition, delegates to the backend and sanity-checks
// the result. Throws BackendFailure on any backend-side problem.
AudioSegment synthesize(TtsBackend& backend, const std::string& text, const VoiceChoice& voice);

// Deterministic stand-in: 0.4 s of a 220 Hz sine per whitespace-separated
// word, 16 kHz. Duration policy tests rely on that exact rate.
class MockTtsBackend : public TtsBackend {
public:
    static constexpr double kSecondsPerWord = 0.4;
    static constexpr int kSampleRate = 16000;

    std::string name() const override { return "mock-tts"; }
    AudioSegment render(const std::string& text, const std::string& voice_id) override;
};

// POSTs {"text","voice_id"} as JSON and expects WAV bytes back.
class HttpTtsBackend : public TtsBackend {
public:
    explicit HttpTtsBackend(std::string endpoint) : endpoint_(std::move(endpoint)) {}

    std::string name() const override { return "http:" + endpoint_; }
    AudioSegment render(const std::string& text, const std::string& voice_id) override;

private:
    std::string endpoint_;
};

int count_words(const std::string& text);

}  // namespace speaking
