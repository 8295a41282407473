// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "speaking/eval/detection_bench.hpp"

namespace speaking {

struct EvaluationReport {
    std::vector<double> per_face_psnr;
    double psnr_median_db = 0.0;
    std::optional<double> fid;
    std::optional<double> fvd;
    std::map<std::string, ConfusionCounts> detection;
};

// Median of the finite values only; +infinity entries (bit-exact frames)
// would otherwise dominate the aggregate. NaN when nothing is finite.
double psnr_median(const std::vector<double>& values);

std::string report_to_text(const EvaluationReport& r);

// Boxplot-ready per-face table: "face_index,psnr_db".
std::string psnr_csv(const std::vector<double>& values);

// Writes report.txt and psnr.csv (and confusion.csv when detection results
// are present) into the directory.
void write_report(const std::filesystem::path& dir, const EvaluationReport& r);

}  // namespace speaking
