// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/voice/chunking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "speaking/core/errors.hpp"

namespace speaking {

namespace {

constexpr double kFrameSeconds = 0.025;

double frame_mean_square(const std::vector<float>& s, long long start, long long frame_len) {
    const long long end = std::min<long long>(start + frame_len, static_cast<long long>(s.size()));
    if (end <= start) return std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (long long i = start; i < end; ++i) {
        acc += static_cast<double>(s[i]) * static_cast<double>(s[i]);
    }
    return acc / static_cast<double>(end - start);
}

}  // namespace

std::vector<AudioSegment> chunk_audio(const AudioSegment& a, double max_len_s,
                                      double search_window_s) {
    if (max_len_s <= 0.0) throw Error("chunk_audio: max_len_s must be positive");
    if (search_window_s < 0.0) throw Error("chunk_audio: search window must be non-negative");
    if (a.sample_rate <= 0) throw Error("chunk_audio: non-positive sample rate");

    const auto total = static_cast<long long>(a.samples.size());
    const long long max_samples = std::max<long long>(
        1, static_cast<long long>(std::floor(max_len_s * a.sample_rate + 1e-9)));
    if (total <= max_samples) return {a};

    const long long n = (total + max_samples - 1) / max_samples;
    const long long frame_len =
        std::max<long long>(1, std::llround(kFrameSeconds * a.sample_rate));
    const long long window = std::llround(search_window_s * a.sample_rate);

    std::vector<long long> cuts;
    cuts.reserve(static_cast<size_t>(n) + 1);
    cuts.push_back(0);
    long long prev = 0;
    for (long long i = 1; i < n; ++i) {
        const long long ideal =
            std::llround(static_cast<double>(i) * static_cast<double>(total) / static_cast<double>(n));
        // Hard bounds: this chunk and every remaining one must stay non-empty
        // and within max_samples.
        const long long feas_lo = std::max(prev + 1, total - (n - i) * max_samples);
        const long long feas_hi = std::min(prev + max_samples, total - (n - i));
        const long long lo = std::max(feas_lo, ideal - window);
        const long long hi = std::min(feas_hi, ideal + window);

        long long chosen = std::clamp(ideal, feas_lo, feas_hi);
        if (lo <= hi) {
            const long long first_grid = ((lo + frame_len - 1) / frame_len) * frame_len;
            double best = std::numeric_limits<double>::infinity();
            bool found = false;
            for (long long g = first_grid; g <= hi; g += frame_len) {
                const double e = frame_mean_square(a.samples, g, frame_len);
                if (e < best) {
                    best = e;
                    chosen = g;
                    found = true;
                }
            }
            if (!found) chosen = std::clamp(ideal, lo, hi);
        }
        cuts.push_back(chosen);
        prev = chosen;
    }
    cuts.push_back(total);

    std::vector<AudioSegment> out;
    out.reserve(static_cast<size_t>(n));
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        AudioSegment chunk;
        chunk.sample_rate = a.sample_rate;
        chunk.samples.assign(a.samples.begin() + cuts[i], a.samples.begin() + cuts[i + 1]);
        out.push_back(std::move(chunk));
    }
    return out;
}

}  // namespace speaking
