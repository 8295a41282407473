// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/compose/compositor.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "speaking/core/errors.hpp"

namespace speaking {

ImageBuffer resize_frame(const ImageBuffer& f, int w, int h) {
    if (w <= 0 || h <= 0) throw Error("resize_frame: target dimensions must be positive");
    if (f.width <= 0 || f.height <= 0 || f.channels <= 0) {
        throw Error("resize_frame: empty source image");
    }
    if (w == f.width && h == f.height) return f;

    ImageBuffer out(w, h, f.channels);
    const double sx = static_cast<double>(f.width) / w;
    const double sy = static_cast<double>(f.height) / h;
    for (int y = 0; y < h; ++y) {
        const double src_y = (y + 0.5) * sy - 0.5;
        const double fy = std::floor(src_y);
        const int y0 = std::clamp(static_cast<int>(fy), 0, f.height - 1);
        const int y1 = std::min(y0 + 1, f.height - 1);
        const double wy = std::clamp(src_y - fy, 0.0, 1.0);
        for (int x = 0; x < w; ++x) {
            const double src_x = (x + 0.5) * sx - 0.5;
            const double fx = std::floor(src_x);
            const int x0 = std::clamp(static_cast<int>(fx), 0, f.width - 1);
            const int x1 = std::min(x0 + 1, f.width - 1);
            const double wx = std::clamp(src_x - fx, 0.0, 1.0);
            for (int c = 0; c < f.channels; ++c) {
                const double top = f.at(x0, y0, c) * (1.0 - wx) + f.at(x1, y0, c) * wx;
                const double bot = f.at(x0, y1, c) * (1.0 - wx) + f.at(x1, y1, c) * wx;
                const double v = top * (1.0 - wy) + bot * wy;
                out.at(x, y, c) = static_cast<uint8_t>(std::clamp(std::lround(v), 0L, 255L));
            }
        }
    }
    return out;
}

ImageBuffer insert_region(const ImageBuffer& base, const ImageBuffer& patch,
                          const BoundingBox& box) {
    if (patch.width != box.w || patch.height != box.h) {
        throw DimensionMismatch("insert_region: patch is " + std::to_string(patch.width) + "x" +
                                std::to_string(patch.height) + " but the box is " +
                                std::to_string(box.w) + "x" + std::to_string(box.h));
    }
    if (patch.channels != base.channels) {
        throw DimensionMismatch("insert_region: patch has " + std::to_string(patch.channels) +
                                " channels, base has " + std::to_string(base.channels));
    }
    if (box.x < 0 || box.y < 0 || box.w <= 0 || box.h <= 0 || box.x + box.w > base.width ||
        box.y + box.h > base.height) {
        throw OutOfBounds("insert_region: box outside the base image");
    }
    ImageBuffer out = base;
    const size_t row_bytes = static_cast<size_t>(box.w) * base.channels;
    const size_t patch_stride = static_cast<size_t>(patch.width) * patch.channels;
    const size_t out_stride = static_cast<size_t>(out.width) * out.channels;
    for (int y = 0; y < box.h; ++y) {
        uint8_t* dst = out.pixels.data() + (static_cast<size_t>(box.y + y) * out_stride) +
                       static_cast<size_t>(box.x) * out.channels;
        std::memcpy(dst, patch.pixels.data() + static_cast<size_t>(y) * patch_stride, row_bytes);
    }
    return out;
}

FrameSequence compose_video(const ImageBuffer& base, const FrameSequence& anim,
                            const BoundingBox& box) {
    if (anim.frames.empty()) throw Error("compose_video: animation has no frames");
    FrameSequence out;
    out.fps = anim.fps;
    out.frames.reserve(anim.frames.size());
    for (const auto& frame : anim.frames) {
        out.frames.push_back(insert_region(base, resize_frame(frame, box.w, box.h), box));
    }
    return out;
}

}  // namespace speaking
