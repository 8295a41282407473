// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/eval/metrics.hpp"

#include <cmath>
#include <limits>

#include "speaking/core/errors.hpp"

namespace speaking {

double psnr(const ImageBuffer& a, const ImageBuffer& b, double max_val) {
    if (!a.same_shape(b)) {
        throw DimensionMismatch("psnr: image shapes differ");
    }
    if (a.pixels.empty()) throw DimensionMismatch("psnr: empty images");
    double acc = 0.0;
    for (size_t i = 0; i < a.pixels.size(); ++i) {
        const double d = static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]);
        acc += d * d;
    }
    const double mse = acc / static_cast<double>(a.pixels.size());
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(max_val * max_val / mse);
}

double psnr_drift(const ImageBuffer& face_crop, const FrameSequence& animation) {
    if (animation.frames.empty()) throw Error("psnr_drift: animation has no frames");
    return psnr(face_crop, animation.frames.back(), 255.0);
}

}  // namespace speaking
