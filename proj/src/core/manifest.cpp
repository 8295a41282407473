// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/core/manifest.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "speaking/core/errors.hpp"

namespace speaking {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string to_string(FaceState s) {
    switch (s) {
    case FaceState::pending: return "pending";
    case FaceState::detected: return "detected";
    case FaceState::described: return "described";
    case FaceState::voiced: return "voiced";
    case FaceState::animated: return "animated";
    case FaceState::composited: return "composited";
    case FaceState::failed: return "failed";
    }
    return "pending";
}

FaceState face_state_from_string(const std::string& s) {
    if (s == "pending") return FaceState::pending;
    if (s == "detected") return FaceState::detected;
    if (s == "described") return FaceState::described;
    if (s == "voiced") return FaceState::voiced;
    if (s == "animated") return FaceState::animated;
    if (s == "composited") return FaceState::composited;
    if (s == "failed") return FaceState::failed;
    throw CorruptManifest("unknown face state: " + s);
}

RunManifest manifest_append(const RunManifest& m, int face_id, const MediaAsset& asset) {
    RunManifest out = m;
    FaceEntry* entry = nullptr;
    for (auto& f : out.faces) {
        if (f.face.face_id == face_id) {
            entry = &f;
            break;
        }
    }
    if (!entry) {
        throw UnknownFace("face_id " + std::to_string(face_id) + " not in manifest");
    }
    const size_t next = entry->assets.size();
    constexpr size_t stage_count = std::size(kStageOrder);
    if (next >= stage_count || kStageOrder[next] != asset.kind) {
        throw StageOrderViolation("cannot append " + to_string(asset.kind) + " to face " +
                                  std::to_string(face_id) + " at stage position " +
                                  std::to_string(next));
    }
    entry->assets.push_back(asset);
    return out;
}

namespace {

ordered_json box_to_json(const BoundingBox& b) {
    return ordered_json{{"x", b.x}, {"y", b.y}, {"w", b.w}, {"h", b.h}};
}

BoundingBox box_from_json(const json& j) {
    return {j.at("x").get<int>(), j.at("y").get<int>(), j.at("w").get<int>(),
            j.at("h").get<int>()};
}

ordered_json asset_to_json(const MediaAsset& a) {
    ordered_json j{{"kind", to_string(a.kind)}, {"path", a.path}, {"hash", a.stage_params_hash}};
    if (a.duration_s) j["duration_s"] = *a.duration_s;
    if (a.fps) j["fps"] = *a.fps;
    if (!a.completed_at.empty()) j["completed_at"] = a.completed_at;
    return j;
}

MediaAsset asset_from_json(const json& j) {
    MediaAsset a;
    a.kind = asset_kind_from_string(j.at("kind").get<std::string>());
    a.path = j.at("path").get<std::string>();
    a.stage_params_hash = j.at("hash").get<std::string>();
    if (j.contains("duration_s")) a.duration_s = j["duration_s"].get<double>();
    if (j.contains("fps")) a.fps = j["fps"].get<double>();
    if (j.contains("completed_at")) a.completed_at = j["completed_at"].get<std::string>();
    return a;
}

Gender gender_from_string(const std::string& s) {
    if (s == "female") return Gender::female;
    if (s == "male") return Gender::male;
    throw CorruptManifest("unknown gender in manifest: " + s);
}

}  // namespace

std::string manifest_to_json(const RunManifest& m) {
    ordered_json j;
    j["source"] = m.source;
    if (!m.created_at.empty()) j["created_at"] = m.created_at;
    if (!m.config_digest.empty()) j["config_digest"] = m.config_digest;
    if (!m.detection_hash.empty()) j["detection_hash"] = m.detection_hash;
    if (m.metadata) {
        j["metadata"] = ordered_json{{"author", m.metadata->author},
                                     {"title", m.metadata->title},
                                     {"year", m.metadata->year}};
    }
    j["faces"] = ordered_json::array();
    for (const auto& f : m.faces) {
        ordered_json fj;
        fj["face_id"] = f.face.face_id;
        fj["box"] = box_to_json(f.face.box);
        fj["square_box"] = box_to_json(f.face.square_box);
        fj["gender"] = to_string(f.face.gender);
        fj["confidence"] = f.face.confidence;
        if (f.face.gender_defaulted) {
            fj["gender_defaulted"] = true;
            fj["raw_gender_label"] = f.face.raw_gender_label;
        }
        fj["state"] = to_string(f.state);
        if (!f.failure_reason.empty()) fj["failure_reason"] = f.failure_reason;
        if (f.narration) {
            ordered_json nj{{"text", f.narration->text}, {"status", f.narration->status}};
            if (f.narration->note) nj["note"] = *f.narration->note;
            if (f.narration->attempts > 0) nj["attempts"] = f.narration->attempts;
            if (!f.narration->hash.empty()) nj["hash"] = f.narration->hash;
            fj["narration"] = std::move(nj);
        }
        fj["assets"] = ordered_json::array();
        for (const auto& a : f.assets) {
            fj["assets"].push_back(asset_to_json(a));
        }
        j["faces"].push_back(std::move(fj));
    }
    return j.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw CorruptManifest(std::string("manifest is not valid JSON: ") + e.what());
    }
    try {
        RunManifest m;
        m.source = j.at("source").get<std::string>();
        if (j.contains("created_at")) m.created_at = j["created_at"].get<std::string>();
        if (j.contains("config_digest")) m.config_digest = j["config_digest"].get<std::string>();
        if (j.contains("detection_hash")) {
            m.detection_hash = j["detection_hash"].get<std::string>();
        }
        if (j.contains("metadata")) {
            ArtworkMetadata meta;
            meta.author = j["metadata"].at("author").get<std::string>();
            meta.title = j["metadata"].at("title").get<std::string>();
            meta.year = j["metadata"].at("year").get<int>();
            m.metadata = std::move(meta);
        }
        for (const auto& fj : j.at("faces")) {
            FaceEntry f;
            f.face.face_id = fj.at("face_id").get<int>();
            f.face.box = box_from_json(fj.at("box"));
            f.face.square_box = box_from_json(fj.at("square_box"));
            f.face.gender = gender_from_string(fj.at("gender").get<std::string>());
            f.face.confidence = fj.at("confidence").get<double>();
            if (fj.contains("gender_defaulted")) {
                f.face.gender_defaulted = fj["gender_defaulted"].get<bool>();
                if (fj.contains("raw_gender_label")) {
                    f.face.raw_gender_label = fj["raw_gender_label"].get<std::string>();
                }
            }
            f.state = face_state_from_string(fj.at("state").get<std::string>());
            if (fj.contains("failure_reason")) {
                f.failure_reason = fj["failure_reason"].get<std::string>();
            }
            if (fj.contains("narration")) {
                NarrationRecord n;
                n.text = fj["narration"].at("text").get<std::string>();
                n.status = fj["narration"].at("status").get<std::string>();
                if (fj["narration"].contains("note")) {
                    n.note = fj["narration"]["note"].get<std::string>();
                }
                if (fj["narration"].contains("attempts")) {
                    n.attempts = fj["narration"]["attempts"].get<int>();
                }
                if (fj["narration"].contains("hash")) {
                    n.hash = fj["narration"]["hash"].get<std::string>();
                }
                f.narration = std::move(n);
            }
            if (fj.contains("assets")) {
                for (const auto& aj : fj["assets"]) {
                    f.assets.push_back(asset_from_json(aj));
                }
            }
            m.faces.push_back(std::move(f));
        }
        return m;
    } catch (const json::exception& e) {
        throw CorruptManifest(std::string("manifest misses required fields: ") + e.what());
    }
}

void save_manifest(const std::filesystem::path& path, const RunManifest& m) {
    const std::string text = manifest_to_json(m);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size()))) {
        throw IoError("cannot write manifest: " + path.string());
    }
}

RunManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CorruptManifest("cannot open manifest: " + path.string());
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return manifest_from_json(text);
}

}  // namespace speaking
