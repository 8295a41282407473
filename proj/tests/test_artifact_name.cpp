// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>
#include <set>
#include <string>

#include "speaking/core/artifact_name.hpp"
#include "speaking/core/errors.hpp"

using namespace speaking;

TEST_CASE("encode follows the stem_face_w_h_x_y_gender.ext layout") {
    CHECK(encode_artifact_name({"ladyermine", 0, 60, 60, 90, 50, Gender::female}, "mp4") ==
          "ladyermine_0_60_60_90_50_female.mp4");
    CHECK(encode_artifact_name({"a", 0, 1, 1, 0, 0, Gender::male}, "mp4") ==
          "a_0_1_1_0_0_male.mp4");
    CHECK(encode_artifact_name({"mona_lisa", 2, 120, 120, 33, 7, Gender::female}, "png") ==
          "mona_lisa_2_120_120_33_7_female.png");
}

TEST_CASE("decode parses the six fields from the right") {
    const auto a = decode_artifact_name("ladyermine_0_60_60_90_50_female.mp4");
    CHECK(a == ArtifactName{"ladyermine", 0, 60, 60, 90, 50, Gender::female});

    const auto b = decode_artifact_name("mona_lisa_2_120_120_33_7_female.png");
    CHECK(b.stem == "mona_lisa");
    CHECK(b.face_id == 2);
    CHECK(b.w == 120);
    CHECK(b.x == 33);
    CHECK(b.y == 7);
}

TEST_CASE("malformed names are rejected") {
    CHECK_THROWS_AS(decode_artifact_name("bad_name.mp4"), MalformedName);
    CHECK_THROWS_AS(decode_artifact_name("stem_0_60_60_90_50_unknown.mp4"), MalformedName);
    CHECK_THROWS_AS(decode_artifact_name("stem_0_abc_60_90_50_female.mp4"), MalformedName);
    CHECK_THROWS_AS(decode_artifact_name("no_extension_0_1_1_0_0_female"), MalformedName);
    CHECK_THROWS_AS(decode_artifact_name("_0_1_1_0_0_female.mp4"), MalformedName);
}

namespace {

ArtifactName random_name(std::mt19937& rng) {
    static const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789_";
    std::uniform_int_distribution<int> len(1, 24);
    std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
    std::uniform_int_distribution<int> coord(-500, 3000);
    std::uniform_int_distribution<int> size(1, 2000);
    std::uniform_int_distribution<int> id(0, 20);
    std::uniform_int_distribution<int> g(0, 1);

    ArtifactName a;
    do {
        a.stem.clear();
        const int n = len(rng);
        for (int i = 0; i < n; ++i) a.stem += alphabet[pick(rng)];
    } while (a.stem.front() == '_');  // encoded form would have an empty stem
    a.face_id = id(rng);
    a.w = size(rng);
    a.h = a.w;
    a.x = coord(rng);
    a.y = coord(rng);
    a.gender = g(rng) ? Gender::male : Gender::female;
    return a;
}

}  // namespace

TEST_CASE("round trip holds for randomized names with underscore stems") {
    std::mt19937 rng(20260814);
    for (int i = 0; i < 1000; ++i) {
        const auto a = random_name(rng);
        const auto encoded = encode_artifact_name(a, "mp4");
        CHECK(decode_artifact_name(encoded) == a);
        CHECK(encode_artifact_name(decode_artifact_name(encoded), "mp4") == encoded);
    }
}

TEST_CASE("encode is injective over distinct records at a fixed extension") {
    std::mt19937 rng(7);
    std::set<std::string> seen;
    std::set<std::string> keys;
    for (int i = 0; i < 2000; ++i) {
        const auto a = random_name(rng);
        const auto key = a.stem + "|" + std::to_string(a.face_id) + "|" + std::to_string(a.w) +
                         "|" + std::to_string(a.h) + "|" + std::to_string(a.x) + "|" +
                         std::to_string(a.y) + "|" + to_string(a.gender);
        const bool new_key = keys.insert(key).second;
        const bool new_name = seen.insert(encode_artifact_name(a, "mp4")).second;
        CHECK(new_key == new_name);
    }
}
