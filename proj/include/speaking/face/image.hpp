// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "speaking/core/types.hpp"

namespace speaking {

// Interleaved row-major 8-bit image, 1 (gray) or 3 (RGB) channels.
// x grows right, y grows down.
struct ImageBuffer {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<uint8_t> pixels;

    ImageBuffer() = default;
    ImageBuffer(int w, int h, int c, uint8_t fill = 0);

    uint8_t& at(int x, int y, int c);
    uint8_t at(int x, int y, int c) const;

    bool same_shape(const ImageBuffer& other) const {
        return width == other.width && height == other.height && channels == other.channels;
    }
    bool operator==(const ImageBuffer&) const = default;
};

// Copies the region [x, x+w) x [y, y+h). The box must be square and fully
// inside the image; throws OutOfBounds otherwise.
ImageBuffer crop_face(const ImageBuffer& img, const BoundingBox& b);

// PNG I/O (8-bit; palette/alpha/16-bit inputs are converted on load).
ImageBuffer read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const ImageBuffer& img);
std::string encode_png(const ImageBuffer& img);
ImageBuffer decode_png(std::string_view bytes);

}  // namespace speaking
