// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "speaking/anim/animation.hpp"
#include "speaking/compose/mp4.hpp"
#include "speaking/core/errors.hpp"
#include "speaking/voice/chunking.hpp"
#include "speaking/voice/tts.hpp"
#include "test_support.hpp"

using namespace speaking;
using speaking::testing::TestHttpServer;

namespace {

ImageBuffer face_still(int side = 32) {
    ImageBuffer img(side, side, 3);
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            img.at(x, y, 0) = static_cast<uint8_t>(40 + 3 * x);
            img.at(x, y, 1) = static_cast<uint8_t>(40 + 3 * y);
            img.at(x, y, 2) = 90;
        }
    }
    return img;
}

AudioSegment seconds(double s) {
    AudioSegment a;
    a.samples.resize(static_cast<size_t>(std::llround(s * a.sample_rate)), 0.1f);
    return a;
}

}  // namespace

TEST_CASE("check_animatable is strict about the yaw threshold") {
    CHECK(check_animatable({0.0}, 30.0));
    CHECK(check_animatable({-29.9}, 30.0));
    CHECK_FALSE(check_animatable({30.0}, 30.0));  // boundary is out
    CHECK_FALSE(check_animatable({-45.0}, 30.0));
    CHECK_THROWS_AS(check_animatable({0.0}, 0.0), Error);
    CHECK_THROWS_AS(check_animatable({0.0}, -5.0), Error);
}

TEST_CASE("mock animation renders round(duration * fps) frames with the markers") {
    MockAnimationBackend backend;
    const ImageBuffer face = face_still();
    const FrameSequence seq = animate_face(backend, face, seconds(1.0));

    REQUIRE(seq.frames.size() == 25);
    CHECK(seq.fps == 25.0);
    CHECK(seq.duration_s() == doctest::Approx(1.0));
    for (size_t k = 0; k < seq.frames.size(); ++k) {
        const ImageBuffer& f = seq.frames[k];
        REQUIRE(f.same_shape(face));
        CHECK(f.at(0, 0, 0) == static_cast<uint8_t>(k % 256));
        CHECK(f.at(0, 0, 1) == static_cast<uint8_t>(k % 256));
        const uint8_t lip = f.at(face.width / 2, 3 * face.height / 4, 0);
        CHECK(lip == (k % 2 == 0 ? 0 : 255));
        // Away from the markers the frame is the unchanged still.
        CHECK(f.at(5, 5, 0) == face.at(5, 5, 0));
        CHECK(f.at(5, 5, 2) == face.at(5, 5, 2));
    }
    CHECK(backend.calls() == 1);
}

TEST_CASE("frame count follows llround at awkward durations and rates") {
    MockAnimationBackend backend(30.0);
    const ImageBuffer face = face_still();
    // 0.7 s at 30 fps = 21 frames exactly; 1.23 s -> llround(36.9) = 37.
    CHECK(animate_face(backend, face, seconds(0.7)).frames.size() == 21);
    CHECK(animate_face(backend, face, seconds(1.23)).frames.size() == 37);
}

TEST_CASE("animate_face rejects non-square stills") {
    MockAnimationBackend backend;
    CHECK_THROWS_AS(animate_face(backend, ImageBuffer(32, 24, 3), seconds(1.0)),
                    NonSquareInput);
    CHECK_THROWS_AS(animate_face(backend, ImageBuffer{}, seconds(1.0)), NonSquareInput);
}

TEST_CASE("animate_face enforces the backend contract") {
    class WrongCount : public AnimationBackend {
    public:
        std::string name() const override { return "wrong-count"; }
        FrameSequence animate(const ImageBuffer& face, const AudioSegment&) override {
            FrameSequence s;
            s.frames = {face, face};  // whatever the duration, always 2
            return s;
        }
    };
    WrongCount wrong;
    CHECK_THROWS_AS(animate_face(wrong, face_still(), seconds(1.0)), BackendFailure);

    class WrongShape : public AnimationBackend {
    public:
        std::string name() const override { return "wrong-shape"; }
        FrameSequence animate(const ImageBuffer&, const AudioSegment& audio) override {
            FrameSequence s;
            s.frames.assign(static_cast<size_t>(std::llround(audio.duration_s() * fps())),
                            ImageBuffer(8, 8, 3));
            return s;
        }
    };
    WrongShape shape;
    CHECK_THROWS_AS(animate_face(shape, face_still(), seconds(1.0)), BackendFailure);
}

TEST_CASE("animate_chunks restarts every chunk from the original still") {
    MockAnimationBackend backend;
    const ImageBuffer face = face_still();
    const std::vector<AudioSegment> chunks = {seconds(0.4), seconds(0.4), seconds(0.2)};

    const FrameSequence seq = animate_chunks(backend, face, chunks);
    REQUIRE(seq.frames.size() == 10 + 10 + 5);
    CHECK(backend.calls() == 3);

    // The mock numbers frames per call, so a restart shows as the (0,0)
    // marker falling back to zero at each chunk boundary.
    CHECK(seq.frames[0].at(0, 0, 0) == 0);
    CHECK(seq.frames[9].at(0, 0, 0) == 9);
    CHECK(seq.frames[10].at(0, 0, 0) == 0);
    CHECK(seq.frames[20].at(0, 0, 0) == 0);

    // Round-sum rule: total == sum of per-chunk rounded counts.
    long long expected = 0;
    for (const auto& c : chunks) expected += std::llround(c.duration_s() * backend.fps());
    CHECK(static_cast<long long>(seq.frames.size()) == expected);

    CHECK_THROWS_AS(animate_chunks(backend, face, {}), Error);
}

TEST_CASE("a failing chunk reports its index and keeps finished frames") {
    MockAnimationBackend backend;
    backend.fail_on_call(1);
    const ImageBuffer face = face_still();
    try {
        animate_chunks(backend, face, {seconds(0.4), seconds(0.4), seconds(0.4)});
        FAIL("expected ChunkedAnimationError");
    } catch (const ChunkedAnimationError& e) {
        CHECK(e.chunk_index() == 1);
        CHECK(e.completed().frames.size() == 10);  // chunk 0 finished
    }
}

TEST_CASE("chunked 48 s mock audio animates to the round-sum frame count") {
    MockTtsBackend tts;
    std::string text;
    for (int i = 0; i < 120; ++i) text += i ? " word" : "word";
    const AudioSegment audio = tts.render(text, "af_heart");
    const auto chunks = chunk_audio(audio, 20.0, 1.5);

    MockAnimationBackend anim;
    const FrameSequence seq = animate_chunks(anim, face_still(), chunks);
    long long expected = 0;
    for (const auto& c : chunks) expected += std::llround(c.duration_s() * anim.fps());
    CHECK(static_cast<long long>(seq.frames.size()) == expected);
    // 48 s at 25 fps is 1200 frames; per-chunk rounding may shift by one
    // either way depending on where the quiet-frame cuts landed.
    CHECK(std::abs(expected - 1200) <= 2);
}

TEST_CASE("http animation adapter ships files out and decodes the MP4 reply") {
    const ImageBuffer face = face_still(24);

    TestHttpServer http;
    bool files_existed = false;
    http.server.Post("/animate", [&](const httplib::Request& req, httplib::Response& res) {
        // The adapter writes scratch files and sends their paths.
        const auto body = req.body;
        const auto face_key = body.find("face_path");
        const auto audio_key = body.find("audio_path");
        if (face_key == std::string::npos || audio_key == std::string::npos) {
            res.status = 400;
            return;
        }
        auto extract = [&](const char* key) {
            const auto at = body.find(key);
            const auto start = body.find('"', at + std::string(key).size() + 1) + 1;
            const auto end = body.find('"', start);
            return body.substr(start, end - start);
        };
        const std::string face_path = extract("face_path");
        const std::string audio_path = extract("audio_path");
        files_existed = std::filesystem::exists(face_path) && std::filesystem::exists(audio_path);

        const ImageBuffer still = read_png(face_path);
        const AudioSegment audio = read_wav(audio_path);
        FrameSequence seq;
        seq.fps = 25.0;
        seq.frames.assign(static_cast<size_t>(std::llround(audio.duration_s() * 25.0)), still);
        res.set_content(mux_mp4(seq, nullptr), "video/mp4");
    });
    http.start();

    HttpAnimationBackend backend(http.url("/animate"));
    const FrameSequence seq = animate_face(backend, face, seconds(0.4));
    CHECK(files_existed);
    REQUIRE(seq.frames.size() == 10);
    CHECK(seq.frames[0].width == 24);

    TestHttpServer failing;
    failing.server.Post("/animate", [](const httplib::Request&, httplib::Response& res) {
        res.status = 500;
    });
    failing.start();
    HttpAnimationBackend bad(failing.url("/animate"));
    CHECK_THROWS_AS(animate_face(bad, face, seconds(0.4)), BackendFailure);
}
