// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "speaking/core/types.hpp"
#include "speaking/face/detection.hpp"
#include "speaking/face/image.hpp"

namespace speaking {

struct ConfusionCounts {
    long long tp = 0;
    long long fp = 0;
    long long fn = 0;
    long long tn = 0;

    ConfusionCounts& operator+=(const ConfusionCounts& o) {
        tp += o.tp;
        fp += o.fp;
        fn += o.fn;
        tn += o.tn;
        return *this;
    }
    bool operator==(const ConfusionCounts&) const = default;
};

// Intersection-over-union of two boxes; 0 when they do not overlap.
double iou(const BoundingBox& a, const BoundingBox& b);

// Greedy matching by descending IoU (ties broken on box coordinates so the
// result is independent of list order). Every box on either side matches at
// most once; pairs at or above the threshold count as tp, the leftovers as
// fp / fn. tn is 1 only for an image with no predictions and no truth —
// the "no character" convention.
ConfusionCounts match_detections(const std::vector<BoundingBox>& pred,
                                 const std::vector<BoundingBox>& truth, double iou_threshold);

// One corpus image with its ground truth (empty vector = no faces).
struct AnnotatedSample {
    std::string stem;
    std::filesystem::path image_path;
    ImageBuffer image;
    std::vector<BoundingBox> truth;
};

// Ground-truth file: one `stem x y w h` line per box, `stem none` for
// images without faces; '#' comments. Throws MalformedRow with the line
// number.
std::map<std::string, std::vector<BoundingBox>> load_annotations(
    const std::filesystem::path& file);

// Pairs every annotated stem with <image_dir>/<stem>.png.
std::vector<AnnotatedSample> load_corpus(const std::filesystem::path& image_dir,
                                         const std::filesystem::path& annotations);

struct DetectorBenchReport {
    std::map<std::string, ConfusionCounts> results;
    // backend name -> reason; a failed backend contributes no result row.
    std::vector<std::pair<std::string, std::string>> failures;
};

DetectorBenchReport benchmark_detectors(const std::vector<DetectionBackend*>& backends,
                                        const std::vector<AnnotatedSample>& corpus,
                                        double iou_threshold = 0.5);

// Plot-ready "backend,tp,fp,fn,tn" table.
std::string confusion_csv(const DetectorBenchReport& report);

}  // namespace speaking
