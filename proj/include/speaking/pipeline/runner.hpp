// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "speaking/core/manifest.hpp"
#include "speaking/core/types.hpp"
#include "speaking/narration/prompt.hpp"
#include "speaking/pipeline/backends.hpp"

namespace speaking {

enum class FacePolicyMode { main_only, all, explicit_ids };

struct FaceSelection {
    FacePolicyMode mode = FacePolicyMode::main_only;
    std::vector<int> ids;  // explicit_ids only
};

struct PipelineConfig {
    BackendSpecs backends;
    PromptMode prompt_mode = PromptMode::simple;
    int max_sentences = 2;
    // Re-asks after a refusal (on top of the detailed->simple fallback).
    int retries = 1;
    double max_audio_len_s = 20.0;
    double chunk_search_window_s = 1.5;
    double pose_threshold_deg = 30.0;
    // Advisory by default: a too-rotated face logs a warning and proceeds;
    // blocking mode fails the face instead.
    bool pose_block = false;
    double fps = 25.0;
    std::filesystem::path out_dir = "out";
    FaceSelection faces;
    Gender default_gender = Gender::female;
    // Curator corrections for detector gender mistakes, keyed by face_id.
    std::map<int, Gender> gender_overrides;
    // Extra refusal patterns file; built-in defaults always apply.
    std::filesystem::path refusal_patterns_file;
    bool frame_sidecar = false;
    // Freeze manifest timestamps; always on when every backend is a mock.
    bool deterministic_clock = false;
    int parallel_faces = 1;
};

struct RunResult {
    RunManifest manifest;
    std::filesystem::path run_dir;
    std::filesystem::path manifest_path;
    int faces_selected = 0;
    int faces_failed = 0;
    std::vector<std::string> warnings;

    bool all_failed() const { return faces_selected > 0 && faces_failed == faces_selected; }
};

// Full pipeline for one artwork: detect -> square+clamp+crop -> narrate ->
// synthesize (+chunk) -> animate (+concatenate) -> compose -> mux. The
// manifest under <out_dir>/<image stem>/manifest.json is rewritten after
// every stage; one face failing never stops the others. An image with no
// faces yields an empty-face manifest and is not an error.
RunResult run_pipeline(const PipelineConfig& cfg, const std::filesystem::path& image_path,
                       const std::optional<ArtworkMetadata>& meta, const BackendSet& backends);

// Re-runs an existing manifest: stages whose recorded hash matches the
// current config (and whose artifact is still on disk) are reused without a
// backend call; everything downstream of a mismatch is recomputed. Metadata
// defaults to what the manifest recorded; pass meta_override to supply it
// later (e.g. upgrading a simple run to detailed prompts).
RunResult resume(const PipelineConfig& cfg, const std::filesystem::path& manifest_path,
                 const BackendSet& backends,
                 const std::optional<ArtworkMetadata>& meta_override = std::nullopt);

}  // namespace speaking
