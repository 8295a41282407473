// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/compose/mux.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "speaking/core/artifact_name.hpp"
#include "speaking/core/errors.hpp"
#include "speaking/compose/mp4.hpp"
#include "speaking/face/image.hpp"

namespace speaking {

MediaAsset mux(const FrameSequence& video, const AudioSegment& audio, const ArtifactName& name,
               const std::filesystem::path& out_dir, const MuxOptions& opts) {
    if (video.frames.empty()) throw Error("mux: no video frames");
    if (video.fps <= 0) throw Error("mux: fps must be positive");
    const double video_dur = video.duration_s();
    const double audio_dur = audio.duration_s();
    const double tolerance =
        1.0 / video.fps + (audio.sample_rate > 0 ? 1.0 / audio.sample_rate : 0.0);
    if (std::abs(video_dur - audio_dur) > tolerance + 1e-9) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "mux: video %.4f s vs audio %.4f s exceeds the %.4f s tolerance", video_dur,
                      audio_dur, tolerance);
        throw DurationMismatch(buf);
    }

    std::filesystem::create_directories(out_dir);
    const std::string file_name = encode_artifact_name(name, "mp4");
    write_mp4(out_dir / file_name, video, &audio);

    if (opts.frame_sidecar) {
        const auto frames_dir = out_dir / opts.sidecar_dir;
        std::filesystem::create_directories(frames_dir);
        for (size_t i = 0; i < video.frames.size(); ++i) {
            char leaf[32];
            std::snprintf(leaf, sizeof(leaf), "%06zu.png", i);
            write_png(frames_dir / leaf, video.frames[i]);
        }
    }

    MediaAsset asset;
    asset.kind = AssetKind::final_video;
    asset.path = file_name;
    asset.duration_s = std::max(video_dur, audio_dur);
    asset.fps = video.fps;
    return asset;
}

}  // namespace speaking
