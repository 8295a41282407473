// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/core/types.hpp"

#include "speaking/core/errors.hpp"

namespace speaking {

std::string to_string(Gender g) {
    return g == Gender::female ? "female" : "male";
}

std::string to_string(AssetKind k) {
    switch (k) {
    case AssetKind::face_crop:
        return "face_crop";
    case AssetKind::audio:
        return "audio";
    case AssetKind::face_animation:
        return "face_animation";
    case AssetKind::final_video:
        return "final_video";
    }
    return "face_crop";
}

AssetKind asset_kind_from_string(const std::string& s) {
    if (s == "face_crop") return AssetKind::face_crop;
    if (s == "audio") return AssetKind::audio;
    if (s == "face_animation") return AssetKind::face_animation;
    if (s == "final_video") return AssetKind::final_video;
    throw Error("unknown asset kind: " + s);
}

}  // namespace speaking
