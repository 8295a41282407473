// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace speaking {

enum class AnswerStatus { usable, refusal, empty };

std::string to_string(AnswerStatus s);

// Post-curation knobs. Refusal patterns are data, not code: curators extend
// them through a plain text file (one pattern per line, '#' comments).
struct CurationConfig {
    std::vector<std::string> refusal_patterns;
    // Refusals open the answer, so matching is restricted to the head of
    // the text to avoid firing on quoted speech further in.
    size_t refusal_window = 200;
    int max_sentences = 2;
    // Trailing-dot words that do not terminate a sentence.
    std::vector<std::string> abbreviations;

    static CurationConfig defaults();
};

CurationConfig load_refusal_patterns(const std::filesystem::path& file, CurationConfig base);

// refusal when any configured pattern occurs case-insensitively within the
// first `refusal_window` characters; empty for whitespace-only text.
AnswerStatus classify_answer(const std::string& raw, const CurationConfig& cfg);

struct NoteSplit {
    std::string body;
    std::optional<std::string> note;
};

// Splits off the trailing disclaimer block: the last paragraph (text after a
// blank line, or the whole answer) starting with "Note:". The note is kept
// for the manifest, never spoken.
NoteSplit strip_note(const std::string& raw);

// Keeps the first max_sentences sentences. A boundary is '.', '!' or '?'
// followed by whitespace or end of text, except after a known abbreviation.
std::string enforce_length(const std::string& body, int max_sentences,
                           const std::vector<std::string>& abbreviations);

int count_sentences(const std::string& text, const std::vector<std::string>& abbreviations);

}  // namespace speaking
