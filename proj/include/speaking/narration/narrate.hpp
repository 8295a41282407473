// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "speaking/narration/curation.hpp"
#include "speaking/narration/prompt.hpp"

namespace speaking {

// Vision-language backend contract: {image path, prompt} in, plain UTF-8
// text out.
class VisionBackend {
public:
    virtual ~VisionBackend() = default;
    virtual std::string name() const = 0;
    virtual std::string describe(const std::filesystem::path& image,
                                 const std::string& prompt) = 0;

    int calls() const { return calls_; }

protected:
    int calls_ = 0;
};

struct NarrationResult {
    std::string raw_text;
    std::string curated_text;
    AnswerStatus status = AnswerStatus::empty;
    std::optional<std::string> stripped_note;
    int sentence_count = 0;
};

struct NarrationAttempt {
    PromptMode mode = PromptMode::simple;
    AnswerStatus status = AnswerStatus::empty;
};

struct NarrationOutcome {
    NarrationResult result;
    std::vector<NarrationAttempt> attempts;
};

// Asks the backend and post-curates: strip the trailing note, classify,
// cap the sentence count. A refusal of the detailed prompt falls back to
// the simple prompt once (added context tends to trip guardrails), then up
// to `retries` re-asks follow. Throws AllAttemptsRefused when every attempt
// ends in a refusal; curated_text is non-empty only for usable status.
NarrationOutcome narrate(VisionBackend& backend, const std::filesystem::path& image,
                         const PromptSpec& spec, int retries, const CurationConfig& cfg);

// Scripted mock: replays a fixed list of answers in order (repeating the
// last one), or serves per-stem fixtures. Without a script it invents a
// deterministic two-sentence description from the image stem.
class MockVisionBackend : public VisionBackend {
public:
    MockVisionBackend() = default;
    explicit MockVisionBackend(std::vector<std::string> scripted_answers);
    explicit MockVisionBackend(std::map<std::string, std::string> by_stem);
    static MockVisionBackend from_fixture_file(const std::filesystem::path& file);

    std::string name() const override { return "mock-llm"; }
    std::string describe(const std::filesystem::path& image, const std::string& prompt) override;

private:
    std::vector<std::string> script_;
    std::map<std::string, std::string> by_stem_;
    bool keyed_ = false;
    size_t next_ = 0;
};

// POSTs {"image_path", "prompt"} as JSON; the response body is the answer
// (either plain text or a JSON object with a "text" field).
class HttpVisionBackend : public VisionBackend {
public:
    explicit HttpVisionBackend(std::string endpoint);

    std::string name() const override { return "http-llm"; }
    std::string describe(const std::filesystem::path& image, const std::string& prompt) override;

private:
    std::string endpoint_;
};

}  // namespace speaking
