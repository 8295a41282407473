// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

namespace speaking {

enum class Gender { female, male };

// Lowercase token used in prompts, filenames and manifests.
std::string to_string(Gender g);

// Axis-aligned pixel rectangle; (x, y) is the top-left corner, y grows down.
struct BoundingBox {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    bool operator==(const BoundingBox&) const = default;
};

// One detected face in a source image. `box` is the raw detector output,
// `square_box` the squared and image-clamped crop actually used downstream.
struct FaceRecord {
    int face_id = 0;
    BoundingBox box;
    BoundingBox square_box;
    Gender gender = Gender::female;
    double confidence = 0.0;
    // Set when the detector label could not be normalized and the default
    // gender policy was applied; the raw label is kept for the manifest.
    bool gender_defaulted = false;
    std::string raw_gender_label;
};

struct ArtworkMetadata {
    std::string author;
    std::string title;
    int year = 0;
    std::string source_file;

    bool operator==(const ArtworkMetadata&) const = default;
};

// The fields encoded into every stored artifact filename:
// <stem>_<face_id>_<w>_<h>_<x>_<y>_<gender>.<ext>
struct ArtifactName {
    std::string stem;
    int face_id = 0;
    int w = 0;
    int h = 0;
    int x = 0;
    int y = 0;
    Gender gender = Gender::female;

    bool operator==(const ArtifactName&) const = default;
};

enum class AssetKind { face_crop, audio, face_animation, final_video };

std::string to_string(AssetKind k);
AssetKind asset_kind_from_string(const std::string& s);

// Reference to one stored intermediate or final file. Paths are relative
// to the run directory so a run can be moved or compared byte-for-byte.
struct MediaAsset {
    AssetKind kind = AssetKind::face_crop;
    std::string path;
    std::string stage_params_hash;
    std::optional<double> duration_s;  // audio/video kinds only
    std::optional<double> fps;         // video kinds only
    std::string completed_at;
};

}  // namespace speaking
