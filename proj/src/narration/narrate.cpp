// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/narration/narrate.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "speaking/core/errors.hpp"
#include "speaking/core/http.hpp"

namespace speaking {

namespace {

NarrationResult curate(const std::string& raw, const CurationConfig& cfg) {
    NarrationResult r;
    r.raw_text = raw;
    const NoteSplit split = strip_note(raw);
    r.stripped_note = split.note;
    r.status = classify_answer(split.body, cfg);
    if (r.status == AnswerStatus::usable) {
        r.curated_text = enforce_length(split.body, cfg.max_sentences, cfg.abbreviations);
        r.sentence_count = count_sentences(r.curated_text, cfg.abbreviations);
    }
    return r;
}

}  // namespace

NarrationOutcome narrate(VisionBackend& backend, const std::filesystem::path& image,
                         const PromptSpec& spec, int retries, const CurationConfig& cfg) {
    if (retries < 0) {
        throw Error("retries must be non-negative");
    }
    NarrationOutcome out;
    PromptSpec active = spec;

    auto ask = [&]() {
        std::string raw;
        try {
            raw = backend.describe(image, build_prompt(active));
        } catch (const BackendFailure&) {
            throw;
        } catch (const MissingMetadata&) {
            throw;
        } catch (const std::exception& e) {
            throw BackendFailure("vision backend '" + backend.name() + "' failed: " + e.what());
        }
        out.result = curate(raw, cfg);
        out.attempts.push_back({active.mode, out.result.status});
        return out.result.status;
    };

    AnswerStatus status = ask();
    if (status == AnswerStatus::refusal && active.mode == PromptMode::detailed) {
        // Specific metadata in the prompt conflicts with the backend's
        // moderation more often than the bare request does.
        active.mode = PromptMode::simple;
        active.metadata.reset();
        status = ask();
    }
    for (int i = 0; i < retries && status != AnswerStatus::usable; ++i) {
        status = ask();
    }
    if (status == AnswerStatus::refusal) {
        throw AllAttemptsRefused("narration refused after " +
                                     std::to_string(out.attempts.size()) + " attempts",
                                 static_cast<int>(out.attempts.size()));
    }
    return out;
}

MockVisionBackend::MockVisionBackend(std::vector<std::string> scripted_answers)
    : script_(std::move(scripted_answers)) {}

MockVisionBackend::MockVisionBackend(std::map<std::string, std::string> by_stem)
    : by_stem_(std::move(by_stem)), keyed_(true) {}

MockVisionBackend MockVisionBackend::from_fixture_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw BackendFailure("cannot open narration fixture " + file.string());
    }
    // One "stem<TAB>answer" entry per line; \n escapes inside the answer.
    std::map<std::string, std::string> by_stem;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) continue;
        std::string text = line.substr(tab + 1);
        std::string unescaped;
        for (size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '\\' && i + 1 < text.size() && text[i + 1] == 'n') {
                unescaped += '\n';
                ++i;
            } else {
                unescaped += text[i];
            }
        }
        by_stem[line.substr(0, tab)] = unescaped;
    }
    return MockVisionBackend(std::move(by_stem));
}

std::string MockVisionBackend::describe(const std::filesystem::path& image,
                                        const std::string&) {
    ++calls_;
    if (!script_.empty()) {
        const size_t i = std::min(next_, script_.size() - 1);
        ++next_;
        return script_[i];
    }
    if (keyed_) {
        auto it = by_stem_.find(image.stem().string());
        if (it == by_stem_.end()) {
            throw BackendFailure("no narration fixture for stem '" + image.stem().string() + "'");
        }
        return it->second;
    }
    const std::string stem = image.stem().string();
    return "I am the figure depicted in " + stem + ", painted long ago. " +
           "Step closer and let me tell you what you are looking at.";
}

HttpVisionBackend::HttpVisionBackend(std::string endpoint) : endpoint_(std::move(endpoint)) {}

std::string HttpVisionBackend::describe(const std::filesystem::path& image,
                                        const std::string& prompt) {
    ++calls_;
    nlohmann::json req = {{"image_path", image.string()}, {"prompt", prompt}};
    const auto res = http_post(endpoint_, req.dump(), "application/json");
    if (res.status < 200 || res.status >= 300) {
        throw BackendFailure("vision endpoint " + endpoint_ + " returned status " +
                             std::to_string(res.status));
    }
    if (nlohmann::json::accept(res.body)) {
        const auto j = nlohmann::json::parse(res.body);
        if (j.is_object() && j.contains("text")) return j["text"].get<std::string>();
    }
    return res.body;
}

}  // namespace speaking
