// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/eval/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "speaking/core/errors.hpp"

namespace speaking {

double psnr_median(const std::vector<double>& values) {
    std::vector<double> finite;
    finite.reserve(values.size());
    for (double v : values) {
        if (std::isfinite(v)) finite.push_back(v);
    }
    if (finite.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(finite.begin(), finite.end());
    const size_t mid = finite.size() / 2;
    if (finite.size() % 2 == 1) return finite[mid];
    return (finite[mid - 1] + finite[mid]) / 2.0;
}

namespace {

std::string format_db(double v) {
    if (std::isinf(v)) return "inf";
    if (std::isnan(v)) return "n/a";
    std::ostringstream s;
    s.precision(4);
    s << std::fixed << v;
    return s.str();
}

}  // namespace

std::string report_to_text(const EvaluationReport& r) {
    std::ostringstream out;
    out << "faces evaluated: " << r.per_face_psnr.size() << '\n';
    out << "psnr median (dB): " << format_db(r.psnr_median_db) << '\n';
    for (size_t i = 0; i < r.per_face_psnr.size(); ++i) {
        out << "  face " << i << " psnr (dB): " << format_db(r.per_face_psnr[i]) << '\n';
    }
    if (r.fid) out << "fid: " << format_db(*r.fid) << '\n';
    if (r.fvd) out << "fvd: " << format_db(*r.fvd) << '\n';
    for (const auto& [name, c] : r.detection) {
        out << "detector " << name << ": tp=" << c.tp << " fp=" << c.fp << " fn=" << c.fn
            << " tn=" << c.tn << '\n';
    }
    return out.str();
}

std::string psnr_csv(const std::vector<double>& values) {
    std::ostringstream out;
    out << "face_index,psnr_db\n";
    for (size_t i = 0; i < values.size(); ++i) {
        out << i << ',' << format_db(values[i]) << '\n';
    }
    return out.str();
}

namespace {

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size()))) {
        throw IoError("cannot write " + path.string());
    }
}

}  // namespace

void write_report(const std::filesystem::path& dir, const EvaluationReport& r) {
    std::filesystem::create_directories(dir);
    write_text_file(dir / "report.txt", report_to_text(r));
    write_text_file(dir / "psnr.csv", psnr_csv(r.per_face_psnr));
    if (!r.detection.empty()) {
        DetectorBenchReport bench;
        bench.results = r.detection;
        write_text_file(dir / "confusion.csv", confusion_csv(bench));
    }
}

}  // namespace speaking
