// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/anim/animation.hpp"

#include <unistd.h>

#include <atomic>
#include <cmath>

#include <nlohmann/json.hpp>

#include "speaking/compose/mp4.hpp"
#include "speaking/core/http.hpp"

namespace speaking {

bool check_animatable(const HeadPoseEstimate& pose, double threshold_deg) {
    if (threshold_deg <= 0) throw Error("check_animatable: threshold must be positive");
    return std::abs(pose.yaw_degrees) < threshold_deg;
}

FrameSequence animate_face(AnimationBackend& backend, const ImageBuffer& face,
                           const AudioSegment& audio) {
    if (face.width != face.height || face.width <= 0) {
        throw NonSquareInput("animate_face: face image is " + std::to_string(face.width) + "x" +
                             std::to_string(face.height) + ", expected a square");
    }
    FrameSequence seq;
    try {
        seq = backend.animate(face, audio);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw BackendFailure("animation backend '" + backend.name() + "': " + e.what());
    }
    const auto expected = static_cast<long long>(std::llround(audio.duration_s() * seq.fps));
    if (static_cast<long long>(seq.frames.size()) != expected) {
        throw BackendFailure("animation backend '" + backend.name() + "' returned " +
                             std::to_string(seq.frames.size()) + " frames, expected " +
                             std::to_string(expected));
    }
    for (const auto& f : seq.frames) {
        if (!f.same_shape(face)) {
            throw BackendFailure("animation backend '" + backend.name() +
                                 "' changed the frame geometry");
        }
    }
    return seq;
}

FrameSequence animate_chunks(AnimationBackend& backend, const ImageBuffer& face,
                             const std::vector<AudioSegment>& chunks) {
    if (chunks.empty()) throw Error("animate_chunks: no audio chunks");
    FrameSequence out;
    out.fps = backend.fps();
    for (size_t i = 0; i < chunks.size(); ++i) {
        FrameSequence part;
        try {
            part = animate_face(backend, face, chunks[i]);
        } catch (const Error& e) {
            throw ChunkedAnimationError(
                "chunk " + std::to_string(i) + " of " + std::to_string(chunks.size()) +
                    " failed: " + e.what(),
                static_cast<int>(i), std::move(out));
        }
        out.fps = part.fps;
        out.frames.insert(out.frames.end(), std::make_move_iterator(part.frames.begin()),
                          std::make_move_iterator(part.frames.end()));
    }
    return out;
}

FrameSequence MockAnimationBackend::animate(const ImageBuffer& face, const AudioSegment& audio) {
    const int call = calls_++;
    if (call == fail_on_) {
        throw BackendFailure("mock-anim: scripted failure on call " + std::to_string(call));
    }
    FrameSequence seq;
    seq.fps = fps_;
    const auto count = static_cast<long long>(std::llround(audio.duration_s() * fps_));
    seq.frames.reserve(static_cast<size_t>(count));
    const int lip_x = face.width / 2;
    const int lip_y = face.height * 3 / 4;
    for (long long k = 0; k < count; ++k) {
        ImageBuffer frame = face;
        for (int c = 0; c < frame.channels; ++c) {
            frame.at(0, 0, c) = static_cast<uint8_t>(k % 256);
            frame.at(lip_x, lip_y, c) = (k % 2 == 0) ? 0 : 255;
        }
        seq.frames.push_back(std::move(frame));
    }
    return seq;
}

FrameSequence HttpAnimationBackend::animate(const ImageBuffer& face, const AudioSegment& audio) {
    ++calls_;
    static std::atomic<unsigned> counter{0};
    const unsigned id = counter++;
    const auto dir = std::filesystem::temp_directory_path();
    const std::string tag =
        "speaking-anim-" + std::to_string(static_cast<unsigned long>(getpid())) + "-" +
        std::to_string(id);
    const auto face_path = dir / (tag + ".png");
    const auto audio_path = dir / (tag + ".wav");
    write_png(face_path, face);
    write_wav(audio_path, audio);

    nlohmann::json req{{"face_path", face_path.string()}, {"audio_path", audio_path.string()}};
    HttpResponse resp;
    try {
        resp = http_post(endpoint_, req.dump(), "application/json");
    } catch (...) {
        std::filesystem::remove(face_path);
        std::filesystem::remove(audio_path);
        throw;
    }
    std::filesystem::remove(face_path);
    std::filesystem::remove(audio_path);
    if (resp.status < 200 || resp.status >= 300) {
        throw BackendFailure("animation endpoint " + endpoint_ + " returned status " +
                             std::to_string(resp.status));
    }
    const Mp4Media media = demux_mp4(resp.body);
    if (media.video.frames.empty()) {
        throw BackendFailure("animation endpoint " + endpoint_ + " returned no frames");
    }
    return media.video;
}

}  // namespace speaking
