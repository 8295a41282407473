// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/core/artifact_name.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include "speaking/core/errors.hpp"

namespace speaking {

namespace {

int parse_int_token(const std::string& tok, const std::string& name) {
    int value = 0;
    const char* begin = tok.data();
    const char* end = begin + tok.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || tok.empty()) {
        throw MalformedName("non-integer " + name + " field '" + tok + "' in artifact name");
    }
    return value;
}

Gender parse_gender_token(const std::string& tok) {
    if (tok == "female") return Gender::female;
    if (tok == "male") return Gender::male;
    throw MalformedName("unknown gender token '" + tok + "' in artifact name");
}

}  // namespace

std::string encode_artifact_name(const ArtifactName& a, const std::string& ext) {
    std::ostringstream out;
    out << a.stem << '_' << a.face_id << '_' << a.w << '_' << a.h << '_' << a.x << '_'
        << a.y << '_' << to_string(a.gender) << '.' << ext;
    return out.str();
}

ArtifactName decode_artifact_name(const std::string& name) {
    const auto dot = name.rfind('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == name.size()) {
        throw MalformedName("artifact name has no extension: " + name);
    }
    const std::string base = name.substr(0, dot);

    // The stem may contain underscores, so the six trailing fields are
    // located by scanning underscores from the right.
    std::vector<size_t> seps;
    size_t pos = base.size();
    while (seps.size() < 6) {
        pos = base.rfind('_', pos == 0 ? std::string::npos : pos - 1);
        if (pos == std::string::npos) break;
        seps.push_back(pos);
        if (pos == 0) break;
    }
    if (seps.size() < 6 || seps.back() == 0) {
        throw MalformedName("artifact name needs a stem plus 6 fields: " + name);
    }

    auto field = [&](int i) {
        // seps is ordered right-to-left; field i counts from the left.
        const size_t begin = seps[5 - i] + 1;
        const size_t end = i == 5 ? base.size() : seps[4 - i];
        return base.substr(begin, end - begin);
    };

    ArtifactName a;
    a.stem = base.substr(0, seps.back());
    a.face_id = parse_int_token(field(0), "face_id");
    a.w = parse_int_token(field(1), "w");
    a.h = parse_int_token(field(2), "h");
    a.x = parse_int_token(field(3), "x");
    a.y = parse_int_token(field(4), "y");
    a.gender = parse_gender_token(field(5));
    if (a.face_id < 0) {
        throw MalformedName("negative face_id in artifact name: " + name);
    }
    return a;
}

}  // namespace speaking
