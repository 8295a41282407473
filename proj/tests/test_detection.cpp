// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>

#include "speaking/core/errors.hpp"
#include "speaking/face/detection.hpp"
#include "test_support.hpp"

using namespace speaking;
using speaking::testing::TempDir;
using speaking::testing::TestHttpServer;

namespace {

ImageBuffer gradient_image(int w, int h) {
    ImageBuffer img(w, h, 3);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < 3; ++c) {
                img.at(x, y, c) = static_cast<uint8_t>((x * 7 + y * 13 + c * 31) % 256);
            }
        }
    }
    return img;
}

}  // namespace

TEST_CASE("normalize_gender maps the detector vocabulary case-insensitively") {
    CHECK(normalize_gender("Woman") == Gender::female);
    CHECK(normalize_gender("FEMALE") == Gender::female);
    CHECK(normalize_gender("f") == Gender::female);
    CHECK(normalize_gender("man") == Gender::male);
    CHECK(normalize_gender("Male") == Gender::male);
    CHECK(normalize_gender("M") == Gender::male);
    CHECK_THROWS_AS(normalize_gender("person"), UnknownGenderLabel);
    CHECK_THROWS_AS(normalize_gender(""), UnknownGenderLabel);
}

TEST_CASE("detect_faces orders by confidence and assigns sequential ids") {
    std::vector<RawDetection> raws = {
        {{10, 10, 20, 20}, "woman", 0.5},
        {{50, 50, 20, 20}, "man", 0.9},
        {{80, 10, 20, 20}, "female", 0.7},
    };
    MockDetectionBackend backend(raws);
    const ImageBuffer img = gradient_image(128, 128);
    const auto faces = detect_faces(backend, img);
    REQUIRE(faces.size() == 3);
    CHECK(faces[0].face_id == 0);
    CHECK(faces[0].confidence == 0.9);
    CHECK(faces[0].gender == Gender::male);
    CHECK(faces[1].confidence == 0.7);
    CHECK(faces[2].confidence == 0.5);
    CHECK(backend.calls() == 1);
}

TEST_CASE("detect_faces output is independent of detector list order") {
    std::vector<RawDetection> raws = {
        {{10, 10, 20, 20}, "woman", 0.5},
        {{50, 50, 20, 20}, "man", 0.5},
        {{80, 10, 20, 20}, "woman", 0.5},
        {{5, 80, 30, 30}, "man", 0.8},
    };
    const ImageBuffer img = gradient_image(128, 128);
    std::sort(raws.begin(), raws.end(),
              [](const RawDetection& a, const RawDetection& b) { return a.box.x < b.box.x; });
    std::vector<std::vector<FaceRecord>> runs;
    do {
        MockDetectionBackend backend(raws);
        runs.push_back(detect_faces(backend, img));
    } while (std::next_permutation(raws.begin(), raws.end(),
                                   [](const RawDetection& a, const RawDetection& b) {
                                       return a.box.x < b.box.x;
                                   }));
    REQUIRE(runs.size() == 24);
    for (const auto& run : runs) {
        REQUIRE(run.size() == 4);
        for (size_t i = 0; i < 4; ++i) {
            CHECK(run[i].box == runs[0][i].box);
            CHECK(run[i].gender == runs[0][i].gender);
        }
    }
}

TEST_CASE("detect_faces squares and clamps each raw box") {
    // A 40x60 box near the left edge: squared side 60 would start at x=-5.
    std::vector<RawDetection> raws = {{{5, 30, 40, 60}, "woman", 0.9}};
    MockDetectionBackend backend(raws);
    const ImageBuffer img = gradient_image(200, 200);
    const auto faces = detect_faces(backend, img);
    REQUIRE(faces.size() == 1);
    CHECK(faces[0].box == BoundingBox{5, 30, 40, 60});
    CHECK(faces[0].square_box.w == faces[0].square_box.h);
    CHECK(faces[0].square_box.w == 60);
    CHECK(faces[0].square_box.x >= 0);
    CHECK(faces[0].square_box.x + faces[0].square_box.w <= 200);
}

TEST_CASE("unknown gender labels fall back to the policy default and are flagged") {
    std::vector<RawDetection> raws = {{{10, 10, 20, 20}, "child", 0.9}};
    MockDetectionBackend backend(raws);
    const ImageBuffer img = gradient_image(64, 64);

    DetectionPolicy policy;
    policy.default_gender = Gender::male;
    const auto faces = detect_faces(backend, img, {}, policy);
    REQUIRE(faces.size() == 1);
    CHECK(faces[0].gender == Gender::male);
    CHECK(faces[0].gender_defaulted);
    CHECK(faces[0].raw_gender_label == "child");
}

TEST_CASE("parse_detection_lines reads records, comments and blanks") {
    const auto recs = parse_detection_lines(
        "# header comment\n"
        "0 10 20 30 40 woman 0.95\n"
        "\n"
        "1 50 60 70 80 man 0.5\n",
        "test");
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].box == BoundingBox{10, 20, 30, 40});
    CHECK(recs[0].gender_label == "woman");
    CHECK(recs[0].confidence == 0.95);
    CHECK(recs[1].box == BoundingBox{50, 60, 70, 80});

    CHECK_THROWS_AS(parse_detection_lines("0 10 20 woman", "test"), BackendFailure);
    CHECK_THROWS_AS(parse_detection_lines("0 1 1 0 5 woman 0.5", "test"), BackendFailure);
}

TEST_CASE("heuristic mock finds one centered face only on non-uniform images") {
    MockDetectionBackend backend;
    const ImageBuffer portrait = gradient_image(128, 96);
    auto faces = backend.detect(portrait, "portrait.png");
    REQUIRE(faces.size() == 1);
    CHECK(faces[0].box.w == faces[0].box.h);

    const ImageBuffer plain(64, 64, 3, 128);
    CHECK(backend.detect(plain, "plain.png").empty());

    const ImageBuffer tiny = gradient_image(8, 8);
    CHECK(backend.detect(tiny, "tiny.png").empty());
}

TEST_CASE("fixture mock replays recorded detections per stem") {
    TempDir tmp("speaking-detect");
    std::ofstream(tmp.path / "lady.txt") << "0 40 24 48 48 woman 0.9\n";

    MockDetectionBackend backend(tmp.path);
    auto faces = backend.detect(ImageBuffer(4, 4, 1), "somewhere/lady.png");
    REQUIRE(faces.size() == 1);
    CHECK(faces[0].box == BoundingBox{40, 24, 48, 48});
    CHECK(backend.detect(ImageBuffer(4, 4, 1), "somewhere/unknown.png").empty());
}

TEST_CASE("exec adapter parses the child's stdout and rejects failures") {
    TempDir tmp("speaking-exec");
    const auto good = tmp.path / "good.sh";
    std::ofstream(good) << "#!/bin/sh\necho '0 4 4 8 8 woman 0.75'\n";
    std::filesystem::permissions(good, std::filesystem::perms::owner_all);

    ExecDetectionBackend backend(good.string());
    const auto recs = backend.detect(ImageBuffer(4, 4, 1), "img.png");
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].box == BoundingBox{4, 4, 8, 8});
    CHECK(recs[0].confidence == 0.75);

    const auto bad = tmp.path / "bad.sh";
    std::ofstream(bad) << "#!/bin/sh\nexit 3\n";
    std::filesystem::permissions(bad, std::filesystem::perms::owner_all);
    ExecDetectionBackend failing(bad.string());
    CHECK_THROWS_AS(failing.detect(ImageBuffer(4, 4, 1), "img.png"), BackendFailure);
}

TEST_CASE("exec adapter hands the image path to the child") {
    TempDir tmp("speaking-exec-path");
    const auto script = tmp.path / "echoer.sh";
    // Reports a face only when called with the expected path.
    std::ofstream(script) << "#!/bin/sh\n"
                          << "if [ \"$1\" = \"/x/it's here.png\" ]; then\n"
                          << "  echo '0 1 1 2 2 man 0.5'\n"
                          << "fi\n";
    std::filesystem::permissions(script, std::filesystem::perms::owner_all);
    ExecDetectionBackend backend(script.string());
    CHECK(backend.detect(ImageBuffer(4, 4, 1), "/x/it's here.png").size() == 1);
    CHECK(backend.detect(ImageBuffer(4, 4, 1), "/x/elsewhere.png").empty());
}

TEST_CASE("http adapter posts the image path and parses the text response") {
    TestHttpServer http;
    std::string seen_body;
    http.server.Post("/detect", [&](const httplib::Request& req, httplib::Response& res) {
        seen_body = req.body;
        res.set_content("0 12 8 16 16 woman 0.9\n", "text/plain");
    });
    http.start();

    HttpDetectionBackend backend(http.url("/detect"));
    const auto recs = backend.detect(ImageBuffer(4, 4, 1), "gallery/lady.png");
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].box == BoundingBox{12, 8, 16, 16});
    CHECK(seen_body.find("gallery/lady.png") != std::string::npos);
}

TEST_CASE("http adapter surfaces server errors as BackendFailure") {
    TestHttpServer http;
    http.server.Post("/detect", [](const httplib::Request&, httplib::Response& res) {
        res.status = 500;
        res.set_content("model exploded", "text/plain");
    });
    http.start();
    HttpDetectionBackend backend(http.url("/detect"));
    CHECK_THROWS_AS(backend.detect(ImageBuffer(4, 4, 1), "x.png"), BackendFailure);

    HttpDetectionBackend unreachable("http://127.0.0.1:1/detect");
    CHECK_THROWS_AS(unreachable.detect(ImageBuffer(4, 4, 1), "x.png"), BackendFailure);
}

TEST_CASE("backend exceptions other than BackendFailure are wrapped") {
    class Exploding : public DetectionBackend {
    public:
        std::string name() const override { return "exploding"; }
        std::vector<RawDetection> detect(const ImageBuffer&,
                                         const std::filesystem::path&) override {
            throw std::runtime_error("cable unplugged");
        }
    };
    Exploding backend;
    CHECK_THROWS_AS(detect_faces(backend, gradient_image(32, 32)), BackendFailure);
}
