// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/voice/tts.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "speaking/core/errors.hpp"
#include "speaking/core/http.hpp"

namespace speaking {

std::vector<VoiceChoice> default_voice_catalog() {
    return {
        {"af_heart", Gender::female, "en-US"},
        {"af_bella", Gender::female, "en-US"},
        {"am_adam", Gender::male, "en-US"},
        {"am_michael", Gender::male, "en-US"},
    };
}

VoiceChoice select_voice(Gender gender, const std::vector<VoiceChoice>& catalog) {
    for (const auto& voice : catalog) {
        if (voice.gender == gender) return voice;
    }
    throw NoVoiceForGender("no voice in catalog for gender '" + to_string(gender) + "'");
}

int count_words(const std::string& text) {
    std::istringstream in(text);
    std::string word;
    int n = 0;
    while (in >> word) ++n;
    return n;
}

AudioSegment synthesize(TtsBackend& backend, const std::string& text, const VoiceChoice& voice) {
    if (count_words(text) == 0) {
        throw Error("synthesize: text is empty");
    }
    AudioSegment audio;
    try {
        audio = backend.render(text, voice.voice_id);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw BackendFailure("tts backend '" + backend.name() + "': " + e.what());
    }
    if (audio.sample_rate <= 0 || audio.samples.empty()) {
        throw BackendFailure("tts backend '" + backend.name() + "' returned no audio");
    }
    return audio;
}

AudioSegment MockTtsBackend::render(const std::string& text, const std::string&) {
    ++calls_;
    const int words = count_words(text);
    AudioSegment a;
    a.sample_rate = kSampleRate;
    const auto total = static_cast<size_t>(
        std::llround(static_cast<double>(words) * kSecondsPerWord * kSampleRate));
    a.samples.resize(total);
    constexpr double kFreq = 220.0;
    for (size_t i = 0; i < total; ++i) {
        const double t = static_cast<double>(i) / kSampleRate;
        a.samples[i] = static_cast<float>(0.35 * std::sin(2.0 * std::numbers::pi * kFreq * t));
    }
    return a;
}

AudioSegment HttpTtsBackend::render(const std::string& text, const std::string& voice_id) {
    ++calls_;
    nlohmann::json req{{"text", text}, {"voice_id", voice_id}};
    const HttpResponse resp = http_post(endpoint_, req.dump(), "application/json");
    if (resp.status < 200 || resp.status >= 300) {
        throw BackendFailure("tts endpoint " + endpoint_ + " returned status " +
                             std::to_string(resp.status));
    }
    return decode_wav(resp.body);
}

}  // namespace speaking
