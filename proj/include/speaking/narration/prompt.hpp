// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "speaking/core/types.hpp"

namespace speaking {

enum class PromptMode { simple, detailed };

std::string to_string(PromptMode m);

struct PromptSpec {
    PromptMode mode = PromptMode::simple;
    Gender gender = Gender::female;
    // Required for detailed mode, with non-empty author and title.
    std::optional<ArtworkMetadata> metadata;
};

// Renders the first-person description request. The simple form asks for a
// two-sentence description for the given gender; the detailed form adds
// title, author and year. Throws MissingMetadata for detailed mode without
// usable metadata.
std::string build_prompt(const PromptSpec& spec);

}  // namespace speaking
