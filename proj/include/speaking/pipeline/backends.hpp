// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>

#include "speaking/anim/animation.hpp"
#include "speaking/face/detection.hpp"
#include "speaking/narration/narrate.hpp"
#include "speaking/voice/tts.hpp"

namespace speaking {

// One spec string per stage. Grammar:
//   "mock"            deterministic built-in stand-in
//   "mock:PATH"       mock replaying a fixture file (detection, llm)
//   "exec:COMMAND"    external process adapter (detection only)
//   "http://..."      HTTP adapter (also https://)
// Empty fields fall back to the SPEAKING_BACKEND_* environment variables,
// then to "mock".
struct BackendSpecs {
    std::string detection = "mock";
    std::string llm = "mock";
    std::string tts = "mock";
    std::string anim = "mock";

    bool all_mock() const;
    bool operator==(const BackendSpecs&) const = default;
};

struct BackendSet {
    std::shared_ptr<DetectionBackend> detection;
    std::shared_ptr<VisionBackend> llm;
    std::shared_ptr<TtsBackend> tts;
    std::shared_ptr<AnimationBackend> anim;
};

std::shared_ptr<DetectionBackend> make_detection_backend(const std::string& spec);
std::shared_ptr<VisionBackend> make_vision_backend(const std::string& spec);
std::shared_ptr<TtsBackend> make_tts_backend(const std::string& spec);
std::shared_ptr<AnimationBackend> make_animation_backend(const std::string& spec, double fps);

BackendSet make_backends(const BackendSpecs& specs, double fps);

// Fills empty fields from SPEAKING_BACKEND_DETECTION / _LLM / _TTS / _ANIM,
// defaulting to "mock".
BackendSpecs apply_env_defaults(BackendSpecs specs);

// Merges "detection=X,llm=Y,tts=Z,anim=W" into base; unknown keys throw.
BackendSpecs parse_backend_arg(const std::string& arg, BackendSpecs base);

}  // namespace speaking
