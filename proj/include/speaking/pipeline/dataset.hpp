// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "speaking/core/types.hpp"

namespace speaking {

// Loads an artwork metadata table: CSV with the exact header
// author,title,date,source_file, RFC 4180 quoting (embedded commas, "" for
// a literal quote, newlines inside quotes). Throws MalformedRow with the
// 1-based line the offending record starts on.
std::vector<ArtworkMetadata> load_dataset_manifest(const std::filesystem::path& csv);

// First row whose source_file matches the stem (with or without extension).
std::optional<ArtworkMetadata> find_metadata(const std::vector<ArtworkMetadata>& rows,
                                             const std::string& stem);

}  // namespace speaking
