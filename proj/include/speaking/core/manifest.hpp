// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "speaking/core/types.hpp"

namespace speaking {

enum class FaceState {
    pending,
    detected,
    described,
    voiced,
    animated,
    composited,
    failed,
};

std::string to_string(FaceState s);
FaceState face_state_from_string(const std::string& s);

struct NarrationRecord {
    std::string text;
    std::string status;  // usable | refusal | empty
    std::optional<std::string> note;
    int attempts = 0;
    std::string hash;
};

struct FaceEntry {
    FaceRecord face;
    FaceState state = FaceState::detected;
    std::string failure_reason;
    std::optional<NarrationRecord> narration;
    std::vector<MediaAsset> assets;
};

// Persisted per-run record of every stage output. Asset paths are relative
// to the directory holding the manifest file.
struct RunManifest {
    std::string source;
    std::optional<ArtworkMetadata> metadata;
    std::string created_at;
    std::string config_digest;
    std::string detection_hash;
    std::vector<FaceEntry> faces;
};

// Stage kinds in pipeline order; a face's asset list is always a prefix of
// this sequence.
inline constexpr AssetKind kStageOrder[] = {AssetKind::face_crop, AssetKind::audio,
                                            AssetKind::face_animation, AssetKind::final_video};

// Returns a copy of m with the asset appended to the given face. Throws
// UnknownFace for an id not in the manifest and StageOrderViolation when the
// asset kind is not the next stage for that face.
RunManifest manifest_append(const RunManifest& m, int face_id, const MediaAsset& asset);

std::string manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const std::string& text);

void save_manifest(const std::filesystem::path& path, const RunManifest& m);
// Throws CorruptManifest when the file is missing, truncated or invalid.
RunManifest load_manifest(const std::filesystem::path& path);

}  // namespace speaking
