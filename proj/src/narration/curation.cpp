// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/narration/curation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "speaking/core/errors.hpp"

namespace speaking {

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool is_blank(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

std::string rtrim(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
}

}  // namespace

std::string to_string(AnswerStatus s) {
    switch (s) {
    case AnswerStatus::usable: return "usable";
    case AnswerStatus::refusal: return "refusal";
    case AnswerStatus::empty: return "empty";
    }
    return "empty";
}

CurationConfig CurationConfig::defaults() {
    CurationConfig cfg;
    cfg.refusal_patterns = {
        "I cannot do that",
        "I am not able to provide information about an artwork",
        "I do not have access to a database",
        "Sorry, as a responsible AI model I cannot create content",
    };
    cfg.abbreviations = {"St", "Mr", "Mrs", "Ms", "Dr", "Prof", "Sr", "Jr"};
    return cfg;
}

CurationConfig load_refusal_patterns(const std::filesystem::path& file, CurationConfig base) {
    std::ifstream in(file);
    if (!in) {
        throw IoError("cannot open refusal pattern file: " + file.string());
    }
    base.refusal_patterns.clear();
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank(line) || line[0] == '#') continue;
        base.refusal_patterns.push_back(line);
    }
    return base;
}

AnswerStatus classify_answer(const std::string& raw, const CurationConfig& cfg) {
    if (is_blank(raw)) return AnswerStatus::empty;
    const std::string head = to_lower(raw.substr(0, cfg.refusal_window));
    for (const auto& pattern : cfg.refusal_patterns) {
        if (!pattern.empty() && head.find(to_lower(pattern)) != std::string::npos) {
            return AnswerStatus::refusal;
        }
    }
    return AnswerStatus::usable;
}

NoteSplit strip_note(const std::string& raw) {
    // Paragraph starts: offset 0 plus every position following a blank line.
    std::vector<size_t> starts{0};
    size_t line_begin = 0;
    bool prev_blank = false;
    for (size_t i = 0; i <= raw.size(); ++i) {
        if (i == raw.size() || raw[i] == '\n') {
            const std::string line = raw.substr(line_begin, i - line_begin);
            if (prev_blank && !is_blank(line)) starts.push_back(line_begin);
            prev_blank = is_blank(line);
            line_begin = i + 1;
        }
    }

    const std::string lower = to_lower(raw);
    for (auto it = starts.rbegin(); it != starts.rend(); ++it) {
        size_t p = *it;
        while (p < lower.size() && (lower[p] == ' ' || lower[p] == '\t')) ++p;
        if (lower.compare(p, 5, "note:") == 0) {
            NoteSplit split;
            split.note = rtrim(raw.substr(*it));
            split.body = rtrim(raw.substr(0, *it));
            return split;
        }
    }
    return {rtrim(raw), std::nullopt};
}

namespace {

bool guarded_abbreviation(const std::string& text, size_t dot,
                          const std::vector<std::string>& abbreviations) {
    size_t begin = dot;
    while (begin > 0 && std::isalpha(static_cast<unsigned char>(text[begin - 1]))) --begin;
    if (begin == dot) return false;
    const std::string word = to_lower(text.substr(begin, dot - begin));
    return std::any_of(abbreviations.begin(), abbreviations.end(),
                       [&](const std::string& a) { return to_lower(a) == word; });
}

// Calls visit(end_index) for each sentence terminator; returns true when the
// text ends with unterminated material.
template <typename Visit>
bool scan_sentences(const std::string& text, const std::vector<std::string>& abbreviations,
                    Visit visit) {
    bool pending = false;
    for (size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (!std::isspace(static_cast<unsigned char>(c))) pending = true;
        const bool terminator = c == '.' || c == '!' || c == '?';
        if (!terminator) continue;
        const bool at_end = i + 1 == text.size();
        if (!at_end && !std::isspace(static_cast<unsigned char>(text[i + 1]))) continue;
        if (c == '.' && guarded_abbreviation(text, i, abbreviations)) continue;
        visit(i);
        pending = false;
    }
    return pending;
}

}  // namespace

int count_sentences(const std::string& text, const std::vector<std::string>& abbreviations) {
    int count = 0;
    const bool tail = scan_sentences(text, abbreviations, [&](size_t) { ++count; });
    return count + (tail ? 1 : 0);
}

std::string enforce_length(const std::string& body, int max_sentences,
                           const std::vector<std::string>& abbreviations) {
    if (max_sentences < 1) {
        throw Error("max_sentences must be at least 1");
    }
    int count = 0;
    size_t cut = std::string::npos;
    scan_sentences(body, abbreviations, [&](size_t end) {
        if (count < max_sentences) {
            ++count;
            cut = end + 1;
        }
    });
    if (count < max_sentences || cut == std::string::npos) return rtrim(body);
    return rtrim(body.substr(0, cut));
}

}  // namespace speaking
