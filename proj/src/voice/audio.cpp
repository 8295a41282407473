// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/voice/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "speaking/core/errors.hpp"

namespace speaking {

namespace {

void put_u32(std::string& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
}

void put_u16(std::string& out, uint16_t v) {
    out += static_cast<char>(v & 0xff);
    out += static_cast<char>((v >> 8) & 0xff);
}

uint32_t get_u32(std::string_view s, size_t at) {
    return static_cast<uint32_t>(static_cast<unsigned char>(s[at])) |
           static_cast<uint32_t>(static_cast<unsigned char>(s[at + 1])) << 8 |
           static_cast<uint32_t>(static_cast<unsigned char>(s[at + 2])) << 16 |
           static_cast<uint32_t>(static_cast<unsigned char>(s[at + 3])) << 24;
}

uint16_t get_u16(std::string_view s, size_t at) {
    return static_cast<uint16_t>(static_cast<unsigned char>(s[at]) |
                                 static_cast<unsigned char>(s[at + 1]) << 8);
}

}  // namespace

std::string encode_wav(const AudioSegment& a) {
    if (a.sample_rate <= 0) {
        throw IoError("audio segment has non-positive sample rate");
    }
    const uint32_t data_bytes = static_cast<uint32_t>(a.samples.size() * 2);
    std::string out;
    out.reserve(44 + data_bytes);
    out += "RIFF";
    put_u32(out, 36 + data_bytes);
    out += "WAVEfmt ";
    put_u32(out, 16);
    put_u16(out, 1);  // PCM
    put_u16(out, 1);  // mono
    put_u32(out, static_cast<uint32_t>(a.sample_rate));
    put_u32(out, static_cast<uint32_t>(a.sample_rate) * 2);
    put_u16(out, 2);
    put_u16(out, 16);
    out += "data";
    put_u32(out, data_bytes);
    for (float s : a.samples) {
        const float clamped = std::clamp(s, -1.0f, 1.0f);
        const auto v = static_cast<int16_t>(std::lrintf(clamped * 32767.0f));
        put_u16(out, static_cast<uint16_t>(v));
    }
    return out;
}

AudioSegment decode_wav(std::string_view bytes) {
    if (bytes.size() < 44 || bytes.substr(0, 4) != "RIFF" || bytes.substr(8, 4) != "WAVE") {
        throw IoError("not a RIFF/WAVE stream");
    }
    AudioSegment a;
    bool got_fmt = false;
    size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const std::string_view id = bytes.substr(pos, 4);
        const uint32_t size = get_u32(bytes, pos + 4);
        const size_t body = pos + 8;
        if (body + size > bytes.size()) {
            throw IoError("truncated WAV chunk");
        }
        if (id == "fmt ") {
            if (size < 16) throw IoError("short fmt chunk");
            const uint16_t format = get_u16(bytes, body);
            const uint16_t channels = get_u16(bytes, body + 2);
            const uint16_t bits = get_u16(bytes, body + 14);
            if (format != 1 || bits != 16) {
                throw IoError("only 16-bit PCM WAV is supported");
            }
            if (channels != 1) {
                throw IoError("only single-channel WAV is supported");
            }
            a.sample_rate = static_cast<int>(get_u32(bytes, body + 4));
            got_fmt = true;
        } else if (id == "data") {
            if (!got_fmt) throw IoError("WAV data chunk before fmt");
            a.samples.reserve(size / 2);
            for (size_t i = 0; i + 1 < size; i += 2) {
                const auto v = static_cast<int16_t>(get_u16(bytes, body + i));
                a.samples.push_back(static_cast<float>(v) / 32767.0f);
            }
            return a;
        }
        pos = body + size + (size & 1);
    }
    throw IoError("WAV stream has no data chunk");
}

void write_wav(const std::filesystem::path& path, const AudioSegment& a) {
    const std::string bytes = encode_wav(a);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()))) {
        throw IoError("cannot write WAV: " + path.string());
    }
}

AudioSegment read_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open WAV: " + path.string());
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_wav(bytes);
}

}  // namespace speaking
