// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/face/geometry.hpp"

#include <algorithm>

namespace speaking {

BoundingBox square_box(const BoundingBox& b) {
    // w, h and side are positive, so '/' is the required floor division.
    const int side = std::max(b.w, b.h);
    const int x_center = b.x + b.w / 2;
    const int y_center = b.y + b.h / 2;
    return {x_center - side / 2, y_center - side / 2, side, side};
}

namespace {

int shift_into(int pos, int side, int limit) {
    return std::max(0, std::min(pos, limit - side));
}

}  // namespace

BoundingBox clamp_box(const BoundingBox& b, int img_w, int img_h) {
    BoundingBox out = b;
    // Shift first; shrinking is the last resort so the crop keeps the size
    // the animation backend was tuned for.
    out.x = shift_into(out.x, out.w, img_w);
    out.y = shift_into(out.y, out.h, img_h);
    const int fit = std::min(img_w, img_h);
    if (out.w > fit) {
        out.w = out.h = fit;
        out.x = shift_into(out.x, fit, img_w);
        out.y = shift_into(out.y, fit, img_h);
    }
    return out;
}

}  // namespace speaking
