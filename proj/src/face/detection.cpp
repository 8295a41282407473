// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/face/detection.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "speaking/core/errors.hpp"
#include "speaking/core/http.hpp"
#include "speaking/face/geometry.hpp"

namespace speaking {

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

Gender normalize_gender(const std::string& raw_label) {
    const std::string label = to_lower(raw_label);
    if (label == "woman" || label == "female" || label == "f") return Gender::female;
    if (label == "man" || label == "male" || label == "m") return Gender::male;
    throw UnknownGenderLabel("cannot map detector gender label '" + raw_label + "'");
}

std::vector<FaceRecord> detect_faces(DetectionBackend& backend, const ImageBuffer& img,
                                     const std::filesystem::path& image_path,
                                     const DetectionPolicy& policy) {
    std::vector<RawDetection> raw;
    try {
        raw = backend.detect(img, image_path);
    } catch (const BackendFailure&) {
        throw;
    } catch (const std::exception& e) {
        throw BackendFailure("detection backend '" + backend.name() + "' failed: " + e.what());
    }

    std::sort(raw.begin(), raw.end(), [](const RawDetection& a, const RawDetection& b) {
        if (a.confidence != b.confidence) return a.confidence > b.confidence;
        return std::tie(a.box.x, a.box.y, a.box.w, a.box.h, a.gender_label) <
               std::tie(b.box.x, b.box.y, b.box.w, b.box.h, b.gender_label);
    });

    std::vector<FaceRecord> records;
    records.reserve(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) {
        FaceRecord rec;
        rec.face_id = static_cast<int>(i);
        rec.box = raw[i].box;
        rec.square_box = clamp_box(square_box(raw[i].box), img.width, img.height);
        rec.confidence = raw[i].confidence;
        rec.raw_gender_label = raw[i].gender_label;
        try {
            rec.gender = normalize_gender(raw[i].gender_label);
        } catch (const UnknownGenderLabel&) {
            rec.gender = policy.default_gender;
            rec.gender_defaulted = true;
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<RawDetection> parse_detection_lines(const std::string& text,
                                                const std::string& origin) {
    std::vector<RawDetection> out;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (line[line.find_first_not_of(" \t")] == '#') continue;
        std::istringstream fields(line);
        int face_id = 0;
        RawDetection d;
        if (!(fields >> face_id >> d.box.x >> d.box.y >> d.box.w >> d.box.h >>
              d.gender_label >> d.confidence)) {
            throw BackendFailure("malformed detection record from " + origin + ": " + line);
        }
        if (d.box.w <= 0 || d.box.h <= 0) {
            throw BackendFailure("non-positive box size from " + origin + ": " + line);
        }
        out.push_back(std::move(d));
    }
    return out;
}

MockDetectionBackend::MockDetectionBackend(std::filesystem::path fixture)
    : fixture_(std::move(fixture)) {}

MockDetectionBackend::MockDetectionBackend(std::vector<RawDetection> records)
    : records_(std::move(records)) {}

MockDetectionBackend::MockDetectionBackend(std::map<std::string, std::vector<RawDetection>> by_stem)
    : by_stem_(std::move(by_stem)), keyed_(true) {}

std::vector<RawDetection> MockDetectionBackend::detect(const ImageBuffer& img,
                                                       const std::filesystem::path& image_path) {
    ++calls_;
    if (records_) return *records_;
    if (keyed_) {
        auto it = by_stem_.find(image_path.stem().string());
        return it == by_stem_.end() ? std::vector<RawDetection>{} : it->second;
    }
    if (fixture_) {
        std::filesystem::path file = *fixture_;
        if (std::filesystem::is_directory(file)) {
            file /= image_path.stem().string() + ".txt";
            if (!std::filesystem::exists(file)) return {};
        }
        std::ifstream in(file);
        if (!in) {
            throw BackendFailure("cannot open detection fixture " + file.string());
        }
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        return parse_detection_lines(text, file.string());
    }

    // Heuristic mode: treat any non-uniform image as holding one centered
    // face, a uniform one (plain backdrop, back of a frame) as empty.
    if (img.width < 16 || img.height < 16) return {};
    uint8_t lo = 255, hi = 0;
    for (uint8_t p : img.pixels) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    if (hi - lo <= 10) return {};
    const int side = std::min(img.width, img.height) / 2;
    RawDetection d;
    d.box = {(img.width - side) / 2, (img.height - side) / 2, side, side};
    d.gender_label = "Woman";
    d.confidence = 0.9;
    return {d};
}

ExecDetectionBackend::ExecDetectionBackend(std::string command) : command_(std::move(command)) {}

std::vector<RawDetection> ExecDetectionBackend::detect(const ImageBuffer&,
                                                       const std::filesystem::path& image_path) {
    ++calls_;
    std::string quoted = "'";
    for (char c : image_path.string()) {
        if (c == '\'') quoted += "'\\''";
        else quoted += c;
    }
    quoted += "'";
    const std::string cmdline = command_ + " " + quoted;
    FILE* pipe = popen(cmdline.c_str(), "r");
    if (!pipe) {
        throw BackendFailure("cannot spawn detection backend: " + command_);
    }
    std::string output;
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) {
        output.append(buf, n);
    }
    const int status = pclose(pipe);
    if (status != 0) {
        throw BackendFailure("detection backend exited with status " + std::to_string(status) +
                             ": " + command_);
    }
    return parse_detection_lines(output, command_);
}

HttpDetectionBackend::HttpDetectionBackend(std::string endpoint)
    : endpoint_(std::move(endpoint)) {}

std::vector<RawDetection> HttpDetectionBackend::detect(const ImageBuffer&,
                                                       const std::filesystem::path& image_path) {
    ++calls_;
    nlohmann::json req = {{"image_path", image_path.string()}};
    const auto res = http_post(endpoint_, req.dump(), "application/json");
    if (res.status < 200 || res.status >= 300) {
        throw BackendFailure("detection endpoint " + endpoint_ + " returned status " +
                             std::to_string(res.status));
    }
    return parse_detection_lines(res.body, endpoint_);
}

}  // namespace speaking
