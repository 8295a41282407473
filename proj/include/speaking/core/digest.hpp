// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>

namespace speaking {

// 64-bit FNV-1a. Stage caching only needs a stable, platform-independent
// fingerprint, not a cryptographic hash.
class Digest {
public:
    Digest& update(std::string_view bytes);
    Digest& update(const void* data, size_t size);

    // Hex form used in manifests.
    std::string hex() const;

private:
    uint64_t state_ = 1469598103934665603ULL;
};

std::string digest_bytes(std::string_view bytes);

// Joins the parts with an unambiguous separator before hashing, so
// ("ab","c") and ("a","bc") do not collide.
std::string digest_fields(std::initializer_list<std::string_view> parts);

std::string digest_file(const std::filesystem::path& path);

}  // namespace speaking
