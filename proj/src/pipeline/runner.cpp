// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/pipeline/runner.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <mutex>
#include <semaphore>
#include <thread>

#include "speaking/anim/animation.hpp"
#include "speaking/compose/compositor.hpp"
#include "speaking/compose/mp4.hpp"
#include "speaking/compose/mux.hpp"
#include "speaking/core/artifact_name.hpp"
#include "speaking/core/digest.hpp"
#include "speaking/core/errors.hpp"
#include "speaking/face/geometry.hpp"
#include "speaking/narration/narrate.hpp"
#include "speaking/voice/chunking.hpp"
#include "speaking/voice/tts.hpp"

namespace speaking {

namespace {

std::string iso_clock(bool deterministic) {
    if (deterministic) return "1970-01-01T00:00:00Z";
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string num(double v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }

std::string box_key(const BoundingBox& b) {
    return std::to_string(b.x) + "," + std::to_string(b.y) + "," + std::to_string(b.w) + "," +
           std::to_string(b.h);
}

std::string meta_key(const std::optional<ArtworkMetadata>& m) {
    if (!m) return {};
    return m->author + "\x1f" + m->title + "\x1f" + std::to_string(m->year);
}

// Everything shared by the per-face workers. The manifest itself is guarded
// by manifest_mu: workers only touch it (and entry pointers into it) while
// holding the lock, because manifest_append swaps the whole object.
struct RunContext {
    const PipelineConfig* cfg = nullptr;
    const BackendSet* backends = nullptr;
    std::filesystem::path image_path;
    std::filesystem::path run_dir;
    std::filesystem::path manifest_path;
    std::string stem;
    ImageBuffer image;
    std::optional<ArtworkMetadata> metadata;
    CurationConfig curation;
    std::vector<VoiceChoice> catalog;
    std::string clock;
    std::string image_digest;
    std::string detection_hash;
    std::string refusal_digest;

    std::mutex manifest_mu;
    std::mutex backend_mu;
    std::vector<std::string> warnings;

    std::string crop_hash(const FaceRecord& f) const {
        return digest_fields({"crop", detection_hash, num(f.face_id), box_key(f.square_box),
                              to_string(f.gender)});
    }
    std::string narration_hash(const std::string& crop, Gender gender) const {
        const std::string meta_part =
            cfg->prompt_mode == PromptMode::detailed ? meta_key(metadata) : std::string{};
        return digest_fields({"narrate", crop, cfg->backends.llm, to_string(cfg->prompt_mode),
                              to_string(gender), num(cfg->retries), num(cfg->max_sentences),
                              refusal_digest, meta_part});
    }
    std::string audio_hash(const std::string& narration, const std::string& voice_id) const {
        return digest_fields({"voice", narration, cfg->backends.tts, voice_id});
    }
    std::string animation_hash(const std::string& audio) const {
        return digest_fields({"animate", audio, cfg->backends.anim, num(cfg->fps),
                              num(cfg->max_audio_len_s), num(cfg->chunk_search_window_s),
                              num(cfg->pose_threshold_deg), cfg->pose_block ? "1" : "0"});
    }
    std::string final_hash(const std::string& animation, const BoundingBox& box) const {
        return digest_fields({"compose", animation, image_digest, box_key(box)});
    }
};

std::string config_digest(const PipelineConfig& cfg, const std::string& refusal_digest) {
    return digest_fields({"config", cfg.backends.detection, cfg.backends.llm, cfg.backends.tts,
                          cfg.backends.anim, to_string(cfg.prompt_mode), num(cfg.max_sentences),
                          num(cfg.retries), num(cfg.max_audio_len_s),
                          num(cfg.chunk_search_window_s), num(cfg.pose_threshold_deg),
                          cfg.pose_block ? "1" : "0", num(cfg.fps),
                          to_string(cfg.default_gender), refusal_digest});
}

CurationConfig make_curation(const PipelineConfig& cfg) {
    CurationConfig cur = CurationConfig::defaults();
    if (!cfg.refusal_patterns_file.empty()) {
        cur = load_refusal_patterns(cfg.refusal_patterns_file, cur);
    }
    cur.max_sentences = cfg.max_sentences;
    return cur;
}

std::string refusal_digest_of(const CurationConfig& cur) {
    Digest d;
    for (const auto& p : cur.refusal_patterns) {
        d.update(p);
        d.update("\x1f");
    }
    d.update(std::to_string(cur.max_sentences));
    return d.hex();
}

FaceEntry* entry_for(RunManifest& m, int face_id) {
    for (auto& e : m.faces) {
        if (e.face.face_id == face_id) return &e;
    }
    return nullptr;
}

std::vector<int> select_faces(const RunManifest& m, const FaceSelection& sel) {
    std::vector<int> ids;
    switch (sel.mode) {
        case FacePolicyMode::main_only:
            // Zero detected faces is a valid outcome, not an error.
            if (!m.faces.empty()) ids.push_back(m.faces.front().face.face_id);
            break;
        case FacePolicyMode::all:
            for (const auto& e : m.faces) ids.push_back(e.face.face_id);
            break;
        case FacePolicyMode::explicit_ids:
            for (int id : sel.ids) {
                bool known = false;
                for (const auto& e : m.faces) known = known || e.face.face_id == id;
                if (!known) {
                    throw UnknownFace("face id " + std::to_string(id) +
                                      " is not in the detection output");
                }
                ids.push_back(id);
            }
            break;
    }
    return ids;
}

// Relative path of the cached artifact for a stage, or nullopt when the
// stage has to be recomputed: wrong kind/position, stale hash, or the file
// vanished.
std::optional<std::string> cached_asset(const FaceEntry& entry, size_t index, AssetKind kind,
                                        const std::string& expected_hash,
                                        const std::filesystem::path& run_dir) {
    if (entry.assets.size() <= index) return std::nullopt;
    const MediaAsset& a = entry.assets[index];
    if (a.kind != kind || a.stage_params_hash != expected_hash) return std::nullopt;
    if (!std::filesystem::exists(run_dir / a.path)) return std::nullopt;
    return a.path;
}

void drop_assets_from(FaceEntry& entry, size_t index) {
    if (entry.assets.size() > index) entry.assets.resize(index);
}

void process_face(RunContext& ctx, RunManifest& manifest, int face_id) {
    const PipelineConfig& cfg = *ctx.cfg;

    FaceRecord face;
    {
        std::lock_guard lock(ctx.manifest_mu);
        face = entry_for(manifest, face_id)->face;
    }
    const ArtifactName name{ctx.stem,          face.face_id,      face.square_box.w,
                            face.square_box.h, face.square_box.x, face.square_box.y,
                            face.gender};

    const std::string crop_hash = ctx.crop_hash(face);
    const std::string narration_hash = ctx.narration_hash(crop_hash, face.gender);
    const VoiceChoice voice = select_voice(face.gender, ctx.catalog);
    const std::string audio_hash = ctx.audio_hash(narration_hash, voice.voice_id);
    const std::string animation_hash = ctx.animation_hash(audio_hash);
    const std::string final_hash = ctx.final_hash(animation_hash, face.square_box);

    // ---- crop ----
    ImageBuffer crop;
    std::optional<std::string> cached;
    {
        std::lock_guard lock(ctx.manifest_mu);
        cached = cached_asset(*entry_for(manifest, face_id), 0, AssetKind::face_crop, crop_hash,
                              ctx.run_dir);
    }
    if (cached) {
        crop = read_png(ctx.run_dir / *cached);
    } else {
        crop = crop_face(ctx.image, face.square_box);
        const auto rel = std::filesystem::path("faces") / encode_artifact_name(name, "png");
        std::filesystem::create_directories(ctx.run_dir / "faces");
        write_png(ctx.run_dir / rel, crop);
        MediaAsset asset;
        asset.kind = AssetKind::face_crop;
        asset.path = rel.generic_string();
        asset.stage_params_hash = crop_hash;
        asset.completed_at = ctx.clock;
        std::lock_guard lock(ctx.manifest_mu);
        FaceEntry* entry = entry_for(manifest, face_id);
        drop_assets_from(*entry, 0);
        entry->narration.reset();
        manifest = manifest_append(manifest, face_id, asset);
        entry = entry_for(manifest, face_id);
        entry->state = FaceState::detected;
        entry->failure_reason.clear();
        save_manifest(ctx.manifest_path, manifest);
    }

    // ---- narration ----
    std::string text;
    bool narration_cached = false;
    {
        std::lock_guard lock(ctx.manifest_mu);
        FaceEntry* entry = entry_for(manifest, face_id);
        if (entry->narration && entry->narration->hash == narration_hash) {
            narration_cached = true;
            if (entry->narration->status != to_string(AnswerStatus::usable)) {
                // Same config, same recorded refusal: stay failed, no re-ask.
                entry->state = FaceState::failed;
                save_manifest(ctx.manifest_path, manifest);
                return;
            }
            text = entry->narration->text;
        }
    }
    if (!narration_cached) {
        PromptSpec spec{cfg.prompt_mode, face.gender, ctx.metadata};
        NarrationOutcome outcome;
        try {
            std::lock_guard lock(ctx.backend_mu);
            outcome =
                narrate(*ctx.backends->llm, ctx.image_path, spec, cfg.retries, ctx.curation);
        } catch (const AllAttemptsRefused& e) {
            std::lock_guard lock(ctx.manifest_mu);
            FaceEntry* entry = entry_for(manifest, face_id);
            drop_assets_from(*entry, 1);
            NarrationRecord rec;
            rec.status = to_string(AnswerStatus::refusal);
            rec.attempts = e.attempts();
            rec.hash = narration_hash;
            entry->narration = rec;
            entry->state = FaceState::failed;
            entry->failure_reason = e.what();
            save_manifest(ctx.manifest_path, manifest);
            throw;
        }
        text = outcome.result.curated_text;
        NarrationRecord rec;
        rec.text = text;
        rec.status = to_string(outcome.result.status);
        rec.note = outcome.result.stripped_note;
        rec.attempts = static_cast<int>(outcome.attempts.size());
        rec.hash = narration_hash;
        std::lock_guard lock(ctx.manifest_mu);
        FaceEntry* entry = entry_for(manifest, face_id);
        drop_assets_from(*entry, 1);
        entry->narration = rec;
        entry->state = FaceState::described;
        save_manifest(ctx.manifest_path, manifest);
    }

    // ---- voicing ----
    AudioSegment audio;
    {
        std::lock_guard lock(ctx.manifest_mu);
        cached = cached_asset(*entry_for(manifest, face_id), 1, AssetKind::audio, audio_hash,
                              ctx.run_dir);
    }
    if (cached) {
        audio = read_wav(ctx.run_dir / *cached);
    } else {
        {
            std::lock_guard lock(ctx.backend_mu);
            audio = synthesize(*ctx.backends->tts, text, voice);
        }
        const auto rel = std::filesystem::path("audio") / encode_artifact_name(name, "wav");
        std::filesystem::create_directories(ctx.run_dir / "audio");
        write_wav(ctx.run_dir / rel, audio);
        MediaAsset asset;
        asset.kind = AssetKind::audio;
        asset.path = rel.generic_string();
        asset.stage_params_hash = audio_hash;
        asset.duration_s = audio.duration_s();
        asset.completed_at = ctx.clock;
        std::lock_guard lock(ctx.manifest_mu);
        FaceEntry* entry = entry_for(manifest, face_id);
        drop_assets_from(*entry, 1);
        manifest = manifest_append(manifest, face_id, asset);
        entry = entry_for(manifest, face_id);
        entry->state = FaceState::voiced;
        save_manifest(ctx.manifest_path, manifest);
    }

    // ---- animation ----
    FrameSequence anim;
    {
        std::lock_guard lock(ctx.manifest_mu);
        cached = cached_asset(*entry_for(manifest, face_id), 2, AssetKind::face_animation,
                              animation_hash, ctx.run_dir);
    }
    const bool final_cached_too = [&] {
        std::lock_guard lock(ctx.manifest_mu);
        return cached && cached_asset(*entry_for(manifest, face_id), 3, AssetKind::final_video,
                                      final_hash, ctx.run_dir)
                             .has_value();
    }();
    if (cached) {
        // Decoding the cached animation is only needed if composition runs.
        if (!final_cached_too) anim = read_mp4(ctx.run_dir / *cached).video;
    } else {
        const HeadPoseEstimate pose = ctx.backends->anim->estimate_pose(crop);
        if (!check_animatable(pose, cfg.pose_threshold_deg)) {
            const std::string msg = "face " + std::to_string(face_id) + ": head yaw " +
                                    std::to_string(pose.yaw_degrees) +
                                    " deg is outside the +/-" +
                                    std::to_string(cfg.pose_threshold_deg) + " deg limit";
            if (cfg.pose_block) throw Error(msg);
            std::lock_guard lock(ctx.manifest_mu);
            ctx.warnings.push_back(msg + "; animating anyway");
        }
        const std::vector<AudioSegment> chunks =
            chunk_audio(audio, cfg.max_audio_len_s, cfg.chunk_search_window_s);
        {
            std::lock_guard lock(ctx.backend_mu);
            anim = animate_chunks(*ctx.backends->anim, crop, chunks);
        }
        const auto rel = std::filesystem::path("anim") / encode_artifact_name(name, "mp4");
        std::filesystem::create_directories(ctx.run_dir / "anim");
        write_mp4(ctx.run_dir / rel, anim, nullptr);
        MediaAsset asset;
        asset.kind = AssetKind::face_animation;
        asset.path = rel.generic_string();
        asset.stage_params_hash = animation_hash;
        asset.duration_s = anim.duration_s();
        asset.fps = anim.fps;
        asset.completed_at = ctx.clock;
        std::lock_guard lock(ctx.manifest_mu);
        FaceEntry* entry = entry_for(manifest, face_id);
        drop_assets_from(*entry, 2);
        manifest = manifest_append(manifest, face_id, asset);
        entry = entry_for(manifest, face_id);
        entry->state = FaceState::animated;
        save_manifest(ctx.manifest_path, manifest);
    }

    // ---- composition + mux ----
    bool final_cached;
    {
        std::lock_guard lock(ctx.manifest_mu);
        final_cached = cached_asset(*entry_for(manifest, face_id), 3, AssetKind::final_video,
                                    final_hash, ctx.run_dir)
                           .has_value();
    }
    if (!final_cached) {
        const FrameSequence composed = compose_video(ctx.image, anim, face.square_box);
        MuxOptions opts;
        opts.frame_sidecar = cfg.frame_sidecar;
        opts.sidecar_dir = face_id == 0 ? "frames" : "frames_" + std::to_string(face_id);
        MediaAsset asset = mux(composed, audio, name, ctx.run_dir, opts);
        asset.stage_params_hash = final_hash;
        asset.completed_at = ctx.clock;
        std::lock_guard lock(ctx.manifest_mu);
        FaceEntry* entry = entry_for(manifest, face_id);
        drop_assets_from(*entry, 3);
        manifest = manifest_append(manifest, face_id, asset);
        save_manifest(ctx.manifest_path, manifest);
    }
    {
        std::lock_guard lock(ctx.manifest_mu);
        FaceEntry* entry = entry_for(manifest, face_id);
        entry->state = FaceState::composited;
        entry->failure_reason.clear();
        save_manifest(ctx.manifest_path, manifest);
    }
}

void run_selected_faces(RunContext& ctx, RunManifest& manifest, const std::vector<int>& ids) {
    auto guarded = [&](int id) {
        try {
            process_face(ctx, manifest, id);
        } catch (const std::exception& e) {
            std::lock_guard lock(ctx.manifest_mu);
            FaceEntry* entry = entry_for(manifest, id);
            entry->state = FaceState::failed;
            if (entry->failure_reason.empty()) entry->failure_reason = e.what();
            save_manifest(ctx.manifest_path, manifest);
        }
    };

    const int width = std::max(1, ctx.cfg->parallel_faces);
    if (width == 1 || ids.size() <= 1) {
        for (int id : ids) guarded(id);
        return;
    }
    std::counting_semaphore<64> slots(std::min(width, 64));
    std::vector<std::thread> workers;
    workers.reserve(ids.size());
    for (int id : ids) {
        slots.acquire();
        workers.emplace_back([&ctx, &guarded, &slots, id] {
            guarded(id);
            slots.release();
        });
    }
    for (auto& w : workers) w.join();
}

RunResult execute(const PipelineConfig& cfg, const std::filesystem::path& image_path,
                  const std::optional<ArtworkMetadata>& meta, const BackendSet& backends,
                  std::optional<RunManifest> existing,
                  const std::filesystem::path& manifest_path_override) {
    RunContext ctx;
    ctx.cfg = &cfg;
    ctx.backends = &backends;
    ctx.image_path = image_path;
    ctx.stem = image_path.stem().string();
    ctx.image = read_png(image_path);
    ctx.metadata = meta;
    ctx.curation = make_curation(cfg);
    ctx.catalog = default_voice_catalog();
    ctx.clock = iso_clock(cfg.deterministic_clock || cfg.backends.all_mock());
    ctx.image_digest = digest_file(image_path);
    ctx.refusal_digest = refusal_digest_of(ctx.curation);
    ctx.detection_hash = digest_fields(
        {"detect", ctx.image_digest, cfg.backends.detection, to_string(cfg.default_gender)});

    if (cfg.prompt_mode == PromptMode::detailed) {
        // Surface unusable metadata before any backend work starts.
        build_prompt(PromptSpec{PromptMode::detailed, Gender::female, ctx.metadata});
    }

    if (existing) {
        ctx.manifest_path = manifest_path_override;
        ctx.run_dir = ctx.manifest_path.parent_path();
    } else {
        ctx.run_dir = cfg.out_dir / ctx.stem;
        ctx.manifest_path = ctx.run_dir / "manifest.json";
    }
    std::filesystem::create_directories(ctx.run_dir);

    RunManifest manifest;
    bool detection_cached = false;
    if (existing && existing->detection_hash == ctx.detection_hash) {
        manifest = std::move(*existing);
        manifest.metadata = ctx.metadata;
        detection_cached = true;
    } else {
        manifest.source = image_path.generic_string();
        manifest.metadata = ctx.metadata;
        manifest.created_at = existing ? existing->created_at : ctx.clock;
        manifest.detection_hash = ctx.detection_hash;
        std::vector<FaceRecord> faces =
            detect_faces(*backends.detection, ctx.image, image_path,
                         DetectionPolicy{cfg.default_gender});
        for (auto& f : faces) {
            FaceEntry e;
            e.face = f;
            e.state = FaceState::detected;
            manifest.faces.push_back(std::move(e));
        }
    }
    manifest.config_digest = config_digest(cfg, ctx.refusal_digest);

    // Curator gender corrections, applied before names and hashes are built.
    for (const auto& [id, gender] : cfg.gender_overrides) {
        if (FaceEntry* e = entry_for(manifest, id)) {
            if (e->face.gender != gender) {
                e->face.gender = gender;
                e->face.gender_defaulted = false;
                if (detection_cached) e->state = FaceState::detected;
            }
        }
    }

    save_manifest(ctx.manifest_path, manifest);

    const std::vector<int> ids = select_faces(manifest, cfg.faces);
    run_selected_faces(ctx, manifest, ids);
    save_manifest(ctx.manifest_path, manifest);

    RunResult result;
    result.run_dir = ctx.run_dir;
    result.manifest_path = ctx.manifest_path;
    result.faces_selected = static_cast<int>(ids.size());
    for (int id : ids) {
        if (entry_for(manifest, id)->state == FaceState::failed) ++result.faces_failed;
    }
    result.warnings = std::move(ctx.warnings);
    result.manifest = std::move(manifest);
    return result;
}

}  // namespace

RunResult run_pipeline(const PipelineConfig& cfg, const std::filesystem::path& image_path,
                       const std::optional<ArtworkMetadata>& meta, const BackendSet& backends) {
    return execute(cfg, image_path, meta, backends, std::nullopt, {});
}

RunResult resume(const PipelineConfig& cfg, const std::filesystem::path& manifest_path,
                 const BackendSet& backends,
                 const std::optional<ArtworkMetadata>& meta_override) {
    RunManifest existing = load_manifest(manifest_path);
    const std::filesystem::path image_path = existing.source;
    const std::optional<ArtworkMetadata> meta =
        meta_override ? meta_override : existing.metadata;
    return execute(cfg, image_path, meta, backends, std::move(existing), manifest_path);
}

}  // namespace speaking
