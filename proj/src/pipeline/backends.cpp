// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/pipeline/backends.hpp"

#include <cstdlib>
#include <string_view>

#include "speaking/core/errors.hpp"

namespace speaking {

namespace {

bool is_mock(const std::string& spec) {
    return spec == "mock" || spec.rfind("mock:", 0) == 0;
}

bool is_http(const std::string& spec) {
    return spec.rfind("http://", 0) == 0 || spec.rfind("https://", 0) == 0;
}

std::string mock_arg(const std::string& spec) {
    return spec.size() > 5 ? spec.substr(5) : std::string{};
}

[[noreturn]] void bad_spec(const char* stage, const std::string& spec) {
    throw Error(std::string("unknown ") + stage + " backend spec '" + spec +
                "' (expected mock, mock:PATH, exec:CMD or an http(s) URL)");
}

std::string env_or(const char* var, const std::string& fallback) {
    const char* v = std::getenv(var);
    return v && *v ? std::string(v) : fallback;
}

}  // namespace

bool BackendSpecs::all_mock() const {
    return is_mock(detection) && is_mock(llm) && is_mock(tts) && is_mock(anim);
}

std::shared_ptr<DetectionBackend> make_detection_backend(const std::string& spec) {
    if (spec == "mock") return std::make_shared<MockDetectionBackend>();
    if (spec.rfind("mock:", 0) == 0) {
        return std::make_shared<MockDetectionBackend>(std::filesystem::path(mock_arg(spec)));
    }
    if (spec.rfind("exec:", 0) == 0) {
        return std::make_shared<ExecDetectionBackend>(spec.substr(5));
    }
    if (is_http(spec)) return std::make_shared<HttpDetectionBackend>(spec);
    bad_spec("detection", spec);
}

std::shared_ptr<VisionBackend> make_vision_backend(const std::string& spec) {
    if (spec == "mock") return std::make_shared<MockVisionBackend>();
    if (spec.rfind("mock:", 0) == 0) {
        return std::make_shared<MockVisionBackend>(
            MockVisionBackend::from_fixture_file(mock_arg(spec)));
    }
    if (is_http(spec)) return std::make_shared<HttpVisionBackend>(spec);
    bad_spec("llm", spec);
}

std::shared_ptr<TtsBackend> make_tts_backend(const std::string& spec) {
    if (spec == "mock") return std::make_shared<MockTtsBackend>();
    if (is_http(spec)) return std::make_shared<HttpTtsBackend>(spec);
    bad_spec("tts", spec);
}

std::shared_ptr<AnimationBackend> make_animation_backend(const std::string& spec, double fps) {
    if (spec == "mock") return std::make_shared<MockAnimationBackend>(fps);
    if (is_http(spec)) return std::make_shared<HttpAnimationBackend>(spec);
    bad_spec("anim", spec);
}

BackendSet make_backends(const BackendSpecs& specs, double fps) {
    BackendSet set;
    set.detection = make_detection_backend(specs.detection);
    set.llm = make_vision_backend(specs.llm);
    set.tts = make_tts_backend(specs.tts);
    set.anim = make_animation_backend(specs.anim, fps);
    return set;
}

BackendSpecs apply_env_defaults(BackendSpecs specs) {
    if (specs.detection.empty()) specs.detection = env_or("SPEAKING_BACKEND_DETECTION", "mock");
    if (specs.llm.empty()) specs.llm = env_or("SPEAKING_BACKEND_LLM", "mock");
    if (specs.tts.empty()) specs.tts = env_or("SPEAKING_BACKEND_TTS", "mock");
    if (specs.anim.empty()) specs.anim = env_or("SPEAKING_BACKEND_ANIM", "mock");
    return specs;
}

BackendSpecs parse_backend_arg(const std::string& arg, BackendSpecs base) {
    size_t pos = 0;
    while (pos < arg.size()) {
        size_t comma = arg.find(',', pos);
        // Keep URLs with commas intact: only split at a comma that is
        // followed by a known "key=" prefix.
        while (comma != std::string::npos) {
            const std::string_view rest(arg.data() + comma + 1, arg.size() - comma - 1);
            if (rest.rfind("detection=", 0) == 0 || rest.rfind("llm=", 0) == 0 ||
                rest.rfind("tts=", 0) == 0 || rest.rfind("anim=", 0) == 0) {
                break;
            }
            comma = arg.find(',', comma + 1);
        }
        const std::string item =
            arg.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw Error("backend item '" + item + "' is not key=value");
        }
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        if (key == "detection") {
            base.detection = value;
        } else if (key == "llm") {
            base.llm = value;
        } else if (key == "tts") {
            base.tts = value;
        } else if (key == "anim") {
            base.anim = value;
        } else {
            throw Error("unknown backend stage '" + key + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return base;
}

}  // namespace speaking
