// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "speaking/core/errors.hpp"
#include "speaking/face/image.hpp"
#include "speaking/voice/audio.hpp"

namespace speaking {

struct FrameSequence {
    std::vector<ImageBuffer> frames;
    double fps = 25.0;

    double duration_s() const {
        return fps > 0 ? static_cast<double>(frames.size()) / fps : 0.0;
    }
    bool operator==(const FrameSequence&) const = default;
};

struct HeadPoseEstimate {
    double yaw_degrees = 0.0;
};

// True iff the face is frontal enough to animate: |yaw| strictly below the
// threshold. Profile faces make portrait animators fail outright.
bool check_animatable(const HeadPoseEstimate& pose, double threshold_deg);

// Raised when one chunk of a multi-chunk animation fails; frames of the
// chunks finished before it are kept so callers can cache partial work.
class ChunkedAnimationError : public Error {
public:
    ChunkedAnimationError(const std::string& msg, int chunk_index, FrameSequence completed)
        : Error(msg), chunk_index_(chunk_index), completed_(std::move(completed)) {}

    int chunk_index() const { return chunk_index_; }
    const FrameSequence& completed() const { return completed_; }

private:
    int chunk_index_ = 0;
    FrameSequence completed_;
};

// Portrait-animation backend contract: square face still + audio in, frame
// sequence out, frame count == round(duration * fps).
class AnimationBackend {
public:
    virtual ~AnimationBackend() = default;
    virtual std::string name() const = 0;
    virtual double fps() const { return 25.0; }
    // Yaw of the face the backend would animate; backends without pose
    // estimation report frontal.
    virtual HeadPoseEstimate estimate_pose(const ImageBuffer& face) {
        (void)face;
        return {};
    }
    virtual FrameSequence animate(const ImageBuffer& face, const AudioSegment& audio) = 0;

    int calls() const { return calls_; }

protected:
    int calls_ = 0;
};

// Validates the square-face precondition, runs the backend and checks the
// frame-count contract. Throws NonSquareInput / BackendFailure.
FrameSequence animate_face(AnimationBackend& backend, const ImageBuffer& face,
                           const AudioSegment& audio);

// Animates every chunk from the ORIGINAL face still (each segment restarts
// from the pristine image, resetting the drift that accumulates over long
// clips) and concatenates the per-chunk frames in order.
FrameSequence animate_chunks(AnimationBackend& backend, const ImageBuffer& face,
                             const std::vector<AudioSegment>& chunks);

// Deterministic stand-in: frame k is the face still with every channel of
// pixel (0,0) set to k mod 256 and a lip pixel at (w/2, 3h/4) toggling
// black/white with k's parity.
class MockAnimationBackend : public AnimationBackend {
public:
    MockAnimationBackend() = default;
    explicit MockAnimationBackend(double fps) : fps_(fps) {}

    std::string name() const override { return "mock-anim"; }
    double fps() const override { return fps_; }
    FrameSequence animate(const ImageBuffer& face, const AudioSegment& audio) override;

    // Test hook: makes animate() throw for the given 0-based call index.
    void fail_on_call(int index) { fail_on_ = index; }

private:
    double fps_ = 25.0;
    int fail_on_ = -1;
};

// Writes the face and audio to scratch files, POSTs {"face_path",
// "audio_path"} as JSON and decodes the MP4 response into frames.
class HttpAnimationBackend : public AnimationBackend {
public:
    explicit HttpAnimationBackend(std::string endpoint) : endpoint_(std::move(endpoint)) {}

    std::string name() const override { return "http:" + endpoint_; }
    FrameSequence animate(const ImageBuffer& face, const AudioSegment& audio) override;

private:
    std::string endpoint_;
};

}  // namespace speaking
