// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "speaking/anim/animation.hpp"
#include "speaking/face/image.hpp"

namespace speaking {

// 10*log10(max_val^2 / MSE) in dB, MSE averaged over all pixels and
// channels. Identical images return +infinity. Throws DimensionMismatch
// when the shapes differ.
double psnr(const ImageBuffer& a, const ImageBuffer& b, double max_val);

// Quality drift of an animation: PSNR between the face still handed to the
// animator and the last generated frame, at an 8-bit peak.
double psnr_drift(const ImageBuffer& face_crop, const FrameSequence& animation);

}  // namespace speaking
