// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "speaking/anim/animation.hpp"
#include "speaking/core/types.hpp"
#include "speaking/voice/audio.hpp"

namespace speaking {

struct MuxOptions {
    // Also dump every frame losslessly to <out_dir>/<sidecar_dir>/%06d.png
    // so tests can assert pixel equality without going through the video
    // codec.
    bool frame_sidecar = false;
    std::string sidecar_dir = "frames";
};

// Writes <out_dir>/<encoded name>.mp4 with the audio aligned at t=0 and
// returns the asset record (kind final_video, duration = the longer of the
// two streams, path relative to out_dir). The streams must already agree in
// length to within one frame plus one audio sample; a bigger gap means an
// upstream orchestration bug and raises DurationMismatch.
MediaAsset mux(const FrameSequence& video, const AudioSegment& audio, const ArtifactName& name,
               const std::filesystem::path& out_dir, const MuxOptions& opts = {});

}  // namespace speaking
