// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "speaking/voice/audio.hpp"

namespace speaking {

// Splits audio into chunks of at most max_len_s seconds. Cuts land on the
// start of the minimum-RMS 25 ms frame within +/- search_window_s of each
// ideal uniform split, so animation segments avoid mid-word cuts. The
// concatenation of the returned chunks reproduces the input samples exactly,
// and with a zero window the chunk count is ceil(duration / max_len_s).
std::vector<AudioSegment> chunk_audio(const AudioSegment& a, double max_len_s,
                                      double search_window_s);

}  // namespace speaking
