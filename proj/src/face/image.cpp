// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/face/image.hpp"

#include <png.h>

#include <cstring>
#include <fstream>

#include "speaking/core/errors.hpp"

namespace speaking {

ImageBuffer::ImageBuffer(int w, int h, int c, uint8_t fill)
    : width(w), height(h), channels(c),
      pixels(static_cast<size_t>(w) * h * c, fill) {}

uint8_t& ImageBuffer::at(int x, int y, int c) {
    return pixels[(static_cast<size_t>(y) * width + x) * channels + c];
}

uint8_t ImageBuffer::at(int x, int y, int c) const {
    return pixels[(static_cast<size_t>(y) * width + x) * channels + c];
}

ImageBuffer crop_face(const ImageBuffer& img, const BoundingBox& b) {
    if (b.w != b.h) {
        throw OutOfBounds("crop box must be square, got " + std::to_string(b.w) + "x" +
                          std::to_string(b.h));
    }
    if (b.w <= 0 || b.x < 0 || b.y < 0 || b.x + b.w > img.width || b.y + b.h > img.height) {
        throw OutOfBounds("crop box outside image bounds");
    }
    ImageBuffer out(b.w, b.h, img.channels);
    const size_t row_bytes = static_cast<size_t>(b.w) * img.channels;
    for (int row = 0; row < b.h; ++row) {
        const uint8_t* src = &img.pixels[((static_cast<size_t>(b.y) + row) * img.width + b.x) *
                                         img.channels];
        std::memcpy(&out.pixels[static_cast<size_t>(row) * row_bytes], src, row_bytes);
    }
    return out;
}

namespace {

struct MemReader {
    const char* data;
    size_t size;
    size_t pos;
};

void mem_read(png_structp png, png_bytep out, png_size_t len) {
    auto* r = static_cast<MemReader*>(png_get_io_ptr(png));
    if (r->pos + len > r->size) {
        png_error(png, "png read past end of buffer");
    }
    std::memcpy(out, r->data + r->pos, len);
    r->pos += len;
}

void mem_write(png_structp png, png_bytep data, png_size_t len) {
    auto* out = static_cast<std::string*>(png_get_io_ptr(png));
    out->append(reinterpret_cast<const char*>(data), len);
}

void mem_flush(png_structp) {}

}  // namespace

ImageBuffer decode_png(std::string_view bytes) {
    if (bytes.size() < 8 || png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8)) {
        throw IoError("not a PNG stream");
    }
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("libpng init failed");
    }
    ImageBuffer img;
    std::vector<png_bytep> rows;
    MemReader reader{bytes.data(), bytes.size(), 0};
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("PNG decode failed");
    }
    png_set_read_fn(png, &reader, mem_read);
    png_read_info(png, info);

    const png_byte color = png_get_color_type(png, info);
    const png_byte depth = png_get_bit_depth(png, info);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (depth == 16) png_set_strip_16(png);
    if (color & PNG_COLOR_MASK_ALPHA || png_get_valid(png, info, PNG_INFO_tRNS)) {
        png_set_strip_alpha(png);
    }
    png_read_update_info(png, info);

    img.width = static_cast<int>(png_get_image_width(png, info));
    img.height = static_cast<int>(png_get_image_height(png, info));
    img.channels = static_cast<int>(png_get_channels(png, info));
    if (img.channels != 1 && img.channels != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("unsupported PNG channel count");
    }
    img.pixels.resize(static_cast<size_t>(img.width) * img.height * img.channels);
    rows.resize(img.height);
    for (int y = 0; y < img.height; ++y) {
        rows[y] = &img.pixels[static_cast<size_t>(y) * img.width * img.channels];
    }
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

std::string encode_png(const ImageBuffer& img) {
    if (img.width <= 0 || img.height <= 0 || (img.channels != 1 && img.channels != 3)) {
        throw IoError("cannot encode empty or non 1/3 channel image");
    }
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng init failed");
    }
    std::string out;
    std::vector<png_bytep> rows(img.height);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("PNG encode failed");
    }
    png_set_write_fn(png, &out, mem_write, mem_flush);
    png_set_IHDR(png, info, img.width, img.height, 8,
                 img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < img.height; ++y) {
        rows[y] = const_cast<png_bytep>(
            &img.pixels[static_cast<size_t>(y) * img.width * img.channels]);
    }
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

ImageBuffer read_png(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open image: " + path.string());
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_png(bytes);
}

void write_png(const std::filesystem::path& path, const ImageBuffer& img) {
    const std::string bytes = encode_png(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()))) {
        throw IoError("cannot write image: " + path.string());
    }
}

}  // namespace speaking
