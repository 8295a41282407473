// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/eval/detection_bench.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

#include "speaking/core/errors.hpp"

namespace speaking {

double iou(const BoundingBox& a, const BoundingBox& b) {
    const long long ix0 = std::max(a.x, b.x);
    const long long iy0 = std::max(a.y, b.y);
    const long long ix1 = std::min<long long>(a.x + a.w, b.x + b.w);
    const long long iy1 = std::min<long long>(a.y + a.h, b.y + b.h);
    const long long iw = std::max<long long>(0, ix1 - ix0);
    const long long ih = std::max<long long>(0, iy1 - iy0);
    const long long inter = iw * ih;
    const long long uni =
        static_cast<long long>(a.w) * a.h + static_cast<long long>(b.w) * b.h - inter;
    if (uni <= 0) return 0.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

ConfusionCounts match_detections(const std::vector<BoundingBox>& pred,
                                 const std::vector<BoundingBox>& truth, double iou_threshold) {
    if (iou_threshold <= 0.0 || iou_threshold > 1.0) {
        throw Error("match_detections: iou threshold must be in (0, 1]");
    }
    ConfusionCounts c;
    if (pred.empty() && truth.empty()) {
        c.tn = 1;
        return c;
    }

    struct Pair {
        double overlap;
        size_t p, t;
    };
    auto key = [](const BoundingBox& b) { return std::tie(b.x, b.y, b.w, b.h); };
    std::vector<Pair> pairs;
    for (size_t p = 0; p < pred.size(); ++p) {
        for (size_t t = 0; t < truth.size(); ++t) {
            const double o = iou(pred[p], truth[t]);
            if (o >= iou_threshold) pairs.push_back({o, p, t});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
        if (a.overlap != b.overlap) return a.overlap > b.overlap;
        if (key(pred[a.p]) != key(pred[b.p])) return key(pred[a.p]) < key(pred[b.p]);
        return key(truth[a.t]) < key(truth[b.t]);
    });

    std::vector<char> pred_used(pred.size(), 0), truth_used(truth.size(), 0);
    for (const auto& pr : pairs) {
        if (pred_used[pr.p] || truth_used[pr.t]) continue;
        pred_used[pr.p] = truth_used[pr.t] = 1;
        ++c.tp;
    }
    for (char used : pred_used) c.fp += used ? 0 : 1;
    for (char used : truth_used) c.fn += used ? 0 : 1;
    return c;
}

std::map<std::string, std::vector<BoundingBox>> load_annotations(
    const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open annotations: " + file.string());
    std::map<std::string, std::vector<BoundingBox>> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        std::string stem;
        if (!(row >> stem)) continue;
        std::string first;
        if (!(row >> first)) {
            throw MalformedRow("annotation row needs 'none' or box coordinates", line_no);
        }
        if (first == "none") {
            std::string extra;
            if (row >> extra) {
                throw MalformedRow("unexpected token after 'none'", line_no);
            }
            out.try_emplace(stem);
            continue;
        }
        BoundingBox b;
        std::string extra;
        try {
            b.x = std::stoi(first);
        } catch (const std::exception&) {
            throw MalformedRow("bad x coordinate '" + first + "'", line_no);
        }
        if (!(row >> b.y >> b.w >> b.h) || (row >> extra)) {
            throw MalformedRow("expected 'stem x y w h'", line_no);
        }
        if (b.w <= 0 || b.h <= 0) {
            throw MalformedRow("box sides must be positive", line_no);
        }
        out[stem].push_back(b);
    }
    return out;
}

std::vector<AnnotatedSample> load_corpus(const std::filesystem::path& image_dir,
                                         const std::filesystem::path& annotations) {
    const auto truth = load_annotations(annotations);
    std::vector<AnnotatedSample> corpus;
    corpus.reserve(truth.size());
    for (const auto& [stem, boxes] : truth) {
        AnnotatedSample s;
        s.stem = stem;
        s.image_path = image_dir / (stem + ".png");
        s.image = read_png(s.image_path);
        s.truth = boxes;
        corpus.push_back(std::move(s));
    }
    return corpus;
}

DetectorBenchReport benchmark_detectors(const std::vector<DetectionBackend*>& backends,
                                        const std::vector<AnnotatedSample>& corpus,
                                        double iou_threshold) {
    DetectorBenchReport report;
    for (DetectionBackend* backend : backends) {
        ConfusionCounts total;
        try {
            for (const auto& sample : corpus) {
                std::vector<BoundingBox> pred;
                for (const auto& det : backend->detect(sample.image, sample.image_path)) {
                    pred.push_back(det.box);
                }
                total += match_detections(pred, sample.truth, iou_threshold);
            }
        } catch (const std::exception& e) {
            report.failures.emplace_back(backend->name(), e.what());
            continue;
        }
        report.results[backend->name()] = total;
    }
    return report;
}

std::string confusion_csv(const DetectorBenchReport& report) {
    std::ostringstream out;
    out << "backend,tp,fp,fn,tn\n";
    for (const auto& [name, c] : report.results) {
        out << name << ',' << c.tp << ',' << c.fp << ',' << c.fn << ',' << c.tn << '\n';
    }
    return out.str();
}

}  // namespace speaking
