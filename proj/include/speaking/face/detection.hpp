// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "speaking/core/types.hpp"
#include "speaking/face/image.hpp"

namespace speaking {

// Raw detector output before gender normalization and face_id assignment.
struct RawDetection {
    BoundingBox box;
    std::string gender_label;
    double confidence = 0.0;
};

// Contract every face detector plugs into. detect() may throw
// BackendFailure; anything else it throws is wrapped by detect_faces.
class DetectionBackend {
public:
    virtual ~DetectionBackend() = default;
    virtual std::string name() const = 0;
    virtual bool gender_estimation() const { return true; }
    virtual std::vector<RawDetection> detect(const ImageBuffer& img,
                                             const std::filesystem::path& image_path) = 0;

    int calls() const { return calls_; }

protected:
    int calls_ = 0;
};

// Case-insensitive mapping of detector vocabulary onto the two voice/prompt
// genders: {woman,female,f} and {man,male,m}. Throws UnknownGenderLabel.
Gender normalize_gender(const std::string& raw_label);

struct DetectionPolicy {
    // Applied when the detector label cannot be normalized; the record is
    // flagged so the manifest shows the substitution.
    Gender default_gender = Gender::female;
};

// Runs the backend, orders records by confidence descending (ties broken by
// raw box position for input-order independence), assigns face_id 0..n-1 and
// fills square_box from the squaring + clamping geometry.
std::vector<FaceRecord> detect_faces(DetectionBackend& backend, const ImageBuffer& img,
                                     const std::filesystem::path& image_path = {},
                                     const DetectionPolicy& policy = {});

// Parses one "face_id x y w h gender confidence" record per line; blank
// lines and '#' comments are skipped. Used by the fixture mock, the
// executable adapter and the HTTP adapter alike.
std::vector<RawDetection> parse_detection_lines(const std::string& text,
                                                const std::string& origin);

// Fixture-driven mock. With a fixture file (or a directory of
// <stem>.txt files) it replays the recorded detections; without one it
// reports a single centered face on any non-uniform image of at least
// 16x16 pixels and nothing otherwise, so plain images stand in for the
// "no character" corpus entries.
class MockDetectionBackend : public DetectionBackend {
public:
    MockDetectionBackend() = default;
    explicit MockDetectionBackend(std::filesystem::path fixture);
    explicit MockDetectionBackend(std::vector<RawDetection> records);
    explicit MockDetectionBackend(std::map<std::string, std::vector<RawDetection>> by_stem);

    std::string name() const override { return "mock-detect"; }
    std::vector<RawDetection> detect(const ImageBuffer& img,
                                     const std::filesystem::path& image_path) override;

private:
    std::optional<std::filesystem::path> fixture_;
    std::optional<std::vector<RawDetection>> records_;
    std::map<std::string, std::vector<RawDetection>> by_stem_;
    bool keyed_ = false;
};

// Spawns `command <image-path>` and parses its stdout.
class ExecDetectionBackend : public DetectionBackend {
public:
    explicit ExecDetectionBackend(std::string command);

    std::string name() const override { return "exec-detect"; }
    std::vector<RawDetection> detect(const ImageBuffer& img,
                                     const std::filesystem::path& image_path) override;

private:
    std::string command_;
};

// POSTs {"image_path": ...} to the endpoint and parses the text response.
class HttpDetectionBackend : public DetectionBackend {
public:
    explicit HttpDetectionBackend(std::string endpoint);

    std::string name() const override { return "http-detect"; }
    std::vector<RawDetection> detect(const ImageBuffer& img,
                                     const std::filesystem::path& image_path) override;

private:
    std::string endpoint_;
};

}  // namespace speaking
