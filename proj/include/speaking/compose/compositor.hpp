// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "speaking/anim/animation.hpp"
#include "speaking/face/image.hpp"

namespace speaking {

// Bilinear resize with pixel-center sampling and edge clamping. Resizing to
// the source dimensions is a bit-exact copy.
ImageBuffer resize_frame(const ImageBuffer& f, int w, int h);

// Returns base with [x, x+w) x [y, y+h) replaced by patch. Everything
// outside the box is bit-identical to base; base itself is not touched.
// Throws DimensionMismatch (patch vs box, or channel count) and OutOfBounds.
ImageBuffer insert_region(const ImageBuffer& base, const ImageBuffer& patch,
                          const BoundingBox& box);

// Re-inserts every animation frame into the artwork: frame i of the result
// is insert_region(base, resize_frame(anim.frames[i], box.w, box.h), box).
// fps and frame count carry over unchanged.
FrameSequence compose_video(const ImageBuffer& base, const FrameSequence& anim,
                            const BoundingBox& box);

}  // namespace speaking
