// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/core/digest.hpp"

#include <fstream>
#include <vector>

#include "speaking/core/errors.hpp"

namespace speaking {

Digest& Digest::update(std::string_view bytes) {
    for (unsigned char c : bytes) {
        state_ ^= c;
        state_ *= 1099511628211ULL;
    }
    return *this;
}

Digest& Digest::update(const void* data, size_t size) {
    return update(std::string_view(static_cast<const char*>(data), size));
}

std::string Digest::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    uint64_t v = state_;
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

std::string digest_bytes(std::string_view bytes) {
    return Digest().update(bytes).hex();
}

std::string digest_fields(std::initializer_list<std::string_view> parts) {
    Digest d;
    for (const auto& p : parts) {
        uint64_t len = p.size();
        d.update(&len, sizeof(len));
        d.update(p);
    }
    return d.hex();
}

std::string digest_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file for hashing: " + path.string());
    }
    Digest d;
    std::vector<char> buf(1 << 16);
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        d.update(buf.data(), static_cast<size_t>(in.gcount()));
    }
    return d.hex();
}

}  // namespace speaking
