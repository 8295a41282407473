// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/narration/prompt.hpp"

#include "speaking/core/errors.hpp"

namespace speaking {

std::string to_string(PromptMode m) {
    return m == PromptMode::simple ? "simple" : "detailed";
}

std::string build_prompt(const PromptSpec& spec) {
    const std::string speaker = to_string(spec.gender);
    if (spec.mode == PromptMode::simple) {
        return "Describe in two sentences the artwork in the first person as if the " + speaker +
               " character was speaking.";
    }
    if (!spec.metadata || spec.metadata->author.empty() || spec.metadata->title.empty()) {
        throw MissingMetadata("detailed prompt needs artwork title and author");
    }
    return "Describe in two sentences the artwork " + spec.metadata->title + " made by " +
           spec.metadata->author + " in " + std::to_string(spec.metadata->year) +
           " in the first person as if the " + speaker + " character was speaking.";
}

}  // namespace speaking
