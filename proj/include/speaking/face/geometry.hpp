// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "speaking/core/types.hpp"

namespace speaking {

// Recalculates a detector box into the square the animation backend needs:
// side = max(w, h), centered on (x + w/2, y + h/2) with floor division.
// No bounds handling here; the square may overhang the image.
BoundingBox square_box(const BoundingBox& b);

// Moves a square box minimally so it lies inside img_w x img_h; when the
// side itself does not fit, the side shrinks to min(img_w, img_h) first.
// Idempotent, and side-preserving whenever min(img_w, img_h) >= side.
BoundingBox clamp_box(const BoundingBox& b, int img_w, int img_h);

}  // namespace speaking
