// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate: one pass/fail line per criterion, nonzero exit when any
// fails. Mock backends only — the oracles are closed forms, independent
// re-derivations, committed fixtures and property suites.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "speaking/anim/animation.hpp"
#include "speaking/compose/compositor.hpp"
#include "speaking/compose/mp4.hpp"
#include "speaking/core/artifact_name.hpp"
#include "speaking/core/manifest.hpp"
#include "speaking/eval/detection_bench.hpp"
#include "speaking/eval/frechet.hpp"
#include "speaking/eval/metrics.hpp"
#include "speaking/face/geometry.hpp"
#include "speaking/face/image.hpp"
#include "speaking/narration/curation.hpp"
#include "speaking/narration/narrate.hpp"
#include "speaking/pipeline/runner.hpp"
#include "speaking/voice/chunking.hpp"
#include "speaking/voice/tts.hpp"

using namespace speaking;
namespace fs = std::filesystem;

namespace {

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw CheckFailure(msg);
}

void require_near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
        std::ostringstream os;
        os << what << ": got " << got << ", want " << want << " +/- " << tol;
        throw CheckFailure(os.str());
    }
}

int g_failures = 0;

void criterion(int n, const std::string& label, double budget_s,
               const std::function<void()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
        body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (error.empty() && elapsed > budget_s) {
        std::ostringstream os;
        os << "exceeded " << budget_s << " s budget (" << elapsed << " s)";
        error = os.str();
    }
    if (error.empty()) {
        std::cout << "PASS criterion " << n << ": " << label << "\n";
    } else {
        ++g_failures;
        std::cout << "FAIL criterion " << n << ": " << label << " -- " << error << "\n";
    }
}

// Scratch directory removed on exit.
struct Scratch {
    fs::path path;
    Scratch() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("speaking-accept-" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~Scratch() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

ImageBuffer portrait_image(int w = 64, int h = 64) {
    ImageBuffer img(w, h, 3);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            img.at(x, y, 0) = static_cast<uint8_t>((x * 3 + 20) % 256);
            img.at(x, y, 1) = static_cast<uint8_t>((y * 3 + 40) % 256);
            img.at(x, y, 2) = static_cast<uint8_t>((x + y) % 256);
        }
    }
    return img;
}

std::string file_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    require(static_cast<bool>(in), "cannot read " + p.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// ---------------------------------------------------------------------------
// Criterion 1: squaring re-derived independently, clamping properties.

// Line-by-line transcription of the square-crop recipe, kept separate from
// the library so the two implementations can only agree by both being right:
//   side     = max(w, h)
//   x_center = x + w div 2      (floor division; w, h, side are positive)
//   y_center = y + h div 2
//   out      = (x_center - side div 2, y_center - side div 2, side, side)
BoundingBox trace_square(const BoundingBox& b) {
    const int side = b.w > b.h ? b.w : b.h;
    const int x_center = b.x + b.w / 2;
    const int y_center = b.y + b.h / 2;
    return BoundingBox{x_center - side / 2, y_center - side / 2, side, side};
}

void geometry_suite() {
    std::mt19937 rng(20260814);
    std::uniform_int_distribution<int> pos(-100, 1200);
    std::uniform_int_distribution<int> len(1, 400);
    std::uniform_int_distribution<int> img(1, 900);

    for (int i = 0; i < 10000; ++i) {
        const BoundingBox b{pos(rng), pos(rng), len(rng), len(rng)};
        const BoundingBox sq = square_box(b);
        const BoundingBox want = trace_square(b);
        require(sq.x == want.x && sq.y == want.y && sq.w == want.w && sq.h == want.h,
                "square_box disagrees with the independent trace");
        require(sq.w == std::max(b.w, b.h) && sq.h == sq.w, "square side != max(w, h)");

        const int img_w = img(rng), img_h = img(rng);
        const BoundingBox c = clamp_box(sq, img_w, img_h);
        require(c.w == c.h && c.w >= 1, "clamped box not square");
        require(c.x >= 0 && c.y >= 0 && c.x + c.w <= img_w && c.y + c.h <= img_h,
                "clamped box escapes the image");
        if (std::min(img_w, img_h) >= sq.w) {
            require(c.w == sq.w, "side shrunk although it fits");
        }
        const BoundingBox c2 = clamp_box(c, img_w, img_h);
        require(c2.x == c.x && c2.y == c.y && c2.w == c.w && c2.h == c.h,
                "clamp_box is not idempotent");
    }
}

// ---------------------------------------------------------------------------
// Criterion 2: artifact-name codec round-trip.

void codec_suite() {
    std::mt19937 rng(20260815);
    const std::vector<std::string> fragments = {"lady",     "ermine", "self_portrait",
                                                "anni_70",  "x",      "7heads",
                                                "madrid",   "detail", "bw"};
    std::uniform_int_distribution<int> nfrag(1, 4);
    std::uniform_int_distribution<size_t> frag(0, fragments.size() - 1);
    std::uniform_int_distribution<int> small(0, 500);
    std::uniform_int_distribution<int> side(1, 4096);
    std::uniform_int_distribution<int> coin(0, 1);
    const std::vector<std::string> exts = {"mp4", "png", "wav"};

    for (int i = 0; i < 10000; ++i) {
        ArtifactName a;
        const int n = nfrag(rng);
        for (int k = 0; k < n; ++k) {
            if (k) a.stem += '_';
            a.stem += fragments[frag(rng)];
        }
        a.face_id = small(rng);
        a.w = side(rng);
        a.h = coin(rng) ? a.w : side(rng);
        a.x = small(rng);
        a.y = small(rng);
        a.gender = coin(rng) ? Gender::female : Gender::male;
        const std::string& ext = exts[static_cast<size_t>(i) % exts.size()];

        const ArtifactName back = decode_artifact_name(encode_artifact_name(a, ext));
        require(back == a, "decode(encode(a)) != a for stem " + a.stem);
    }
}

// ---------------------------------------------------------------------------
// Criterion 3: compositor purity and crop/paste self-inverse.

void compositor_suite() {
    std::mt19937 rng(20260816);
    std::uniform_int_distribution<int> dim(16, 96);
    std::uniform_int_distribution<int> byte(0, 255);
    MockAnimationBackend anim;

    for (int i = 0; i < 100; ++i) {
        const int W = dim(rng), H = dim(rng);
        ImageBuffer base(W, H, 3);
        for (auto& px : base.pixels) px = static_cast<uint8_t>(byte(rng));

        std::uniform_int_distribution<int> side_d(1, std::min(W, H));
        const int side = side_d(rng);
        std::uniform_int_distribution<int> xd(0, W - side), yd(0, H - side);
        const BoundingBox box{xd(rng), yd(rng), side, side};

        const ImageBuffer crop = crop_face(base, box);
        require(insert_region(base, crop, box) == base,
                "pasting the crop back does not reproduce the base");

        AudioSegment audio;
        audio.samples.assign(3200, 0.1f);  // 0.2 s -> 5 frames at 25 fps
        const FrameSequence seq = animate_face(anim, crop, audio);
        const FrameSequence composed = compose_video(base, seq, box);
        require(composed.frames.size() == seq.frames.size(), "composition changed frame count");

        for (const ImageBuffer& f : composed.frames) {
            require(f.width == W && f.height == H, "composed frame has wrong geometry");
            for (int y = 0; y < H; ++y) {
                for (int x = 0; x < W; ++x) {
                    const bool inside = x >= box.x && x < box.x + box.w && y >= box.y &&
                                        y < box.y + box.h;
                    if (inside) continue;
                    for (int c = 0; c < 3; ++c) {
                        require(f.at(x, y, c) == base.at(x, y, c),
                                "composed frame differs from the base outside the box");
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Criterion 4: metric oracles and committed embedding fixtures.

void metrics_suite(const fs::path& data_dir) {
    const ImageBuffer black(8, 8, 1, 0), white(8, 8, 1, 255);
    require_near(psnr(black, white, 255.0), 0.0, 1e-12, "full-range PSNR");
    ImageBuffer off_by_one(8, 8, 1, 1);
    require_near(psnr(black, off_by_one, 255.0), 48.1308, 1e-4, "off-by-one PSNR");
    require(std::isinf(psnr(black, black, 255.0)) && psnr(black, black, 255.0) > 0,
            "identical-image PSNR is not +infinity");

    // Frechet: zero on identical fits, symmetric, diagonal closed form.
    const EmbeddingSet cloud = {{0.0, 1.0}, {1.0, 0.0}, {2.0, 2.0}, {-1.0, 0.5}};
    const EmbeddingSet cloud2 = {{3.0, 1.0}, {0.5, -1.0}, {1.5, 2.5}, {2.0, 0.0}};
    require_near(fid_score(cloud, cloud), 0.0, 1e-6, "Frechet self-distance");
    require_near(fid_score(cloud, cloud2), fid_score(cloud2, cloud), 1e-6,
                 "Frechet symmetry");

    GaussianSummary g1, g2;
    g1.mean = Eigen::VectorXd::Zero(2);
    g2.mean = (Eigen::VectorXd(2) << 3.0, 4.0).finished();  // ||dmu||^2 = 25
    g1.covariance = (Eigen::VectorXd(2) << 1.0, 4.0).finished().asDiagonal();
    g2.covariance = (Eigen::VectorXd(2) << 9.0, 16.0).finished().asDiagonal();
    // 25 + (1-3)^2 + (2-4)^2 = 33
    require_near(frechet_distance(g1, g2), 33.0, 1e-6, "diagonal closed form");

    const EmbeddingFixture fid = load_embedding_fixture(data_dir / "fid_reference_embeddings.json");
    require(fid.name == "reference_fid", "unexpected FID fixture name: " + fid.name);
    require_near(fid_score(fid.real, fid.generated), 293.67, 0.01, "FID fixture score");

    const EmbeddingFixture fvd = load_embedding_fixture(data_dir / "fvd_reference_embeddings.json");
    require(fvd.name == "reference_fvd", "unexpected FVD fixture name: " + fvd.name);
    require_near(fid_score(fvd.real, fvd.generated), 295.806, 0.01, "FVD fixture score");
}

// ---------------------------------------------------------------------------
// Criterion 5: detection benchmark harness.

void bench_suite() {
    // Synthetic corpus with hand-counted confusion totals; "c" is the
    // no-face image that must land in the true-negative cell.
    const ImageBuffer blank(64, 64, 3, 128);
    std::vector<AnnotatedSample> corpus = {
        {"a", "a.png", blank, {{10, 10, 20, 20}}},
        {"b", "b.png", blank, {{10, 10, 20, 20}}},
        {"c", "c.png", blank, {}},
        {"d", "d.png", blank, {{5, 5, 10, 10}, {30, 30, 12, 12}}},
    };
    MockDetectionBackend mock(std::map<std::string, std::vector<RawDetection>>{
        {"a", {{{10, 10, 20, 20}, "woman", 0.9}}},
        {"b", {{{40, 40, 20, 20}, "man", 0.8}}},
        {"c", {}},
        {"d", {{{5, 5, 10, 10}, "woman", 0.7}}},
    });
    const DetectorBenchReport report = benchmark_detectors({&mock}, corpus, 0.5);
    require(report.failures.empty(), "healthy backend reported a failure");
    const ConfusionCounts got = report.results.at("mock-detect");
    require(got == ConfusionCounts{2, 1, 2, 1},
            "confusion counts do not match the hand-derived totals");

    // Conservation identities on randomized instances.
    std::mt19937 rng(20260817);
    std::uniform_int_distribution<int> count(0, 6), pos(0, 50), len(1, 20);
    std::uniform_real_distribution<double> thr(0.05, 1.0);
    for (int i = 0; i < 1000; ++i) {
        auto boxes = [&](int n) {
            std::vector<BoundingBox> v;
            for (int k = 0; k < n; ++k) v.push_back({pos(rng), pos(rng), len(rng), len(rng)});
            return v;
        };
        const std::vector<BoundingBox> pred = boxes(count(rng));
        const std::vector<BoundingBox> truth = boxes(count(rng));
        const ConfusionCounts c = match_detections(pred, truth, thr(rng));
        require(c.tp + c.fp == static_cast<long long>(pred.size()),
                "tp + fp != number of predictions");
        require(c.tp + c.fn == static_cast<long long>(truth.size()),
                "tp + fn != number of ground-truth boxes");
        require(c.tn == ((pred.empty() && truth.empty()) ? 1 : 0), "tn convention violated");
    }
}

// ---------------------------------------------------------------------------
// Criterion 6: narration curation.

void curation_suite() {
    const CurationConfig cfg = CurationConfig::defaults();
    require(cfg.refusal_patterns.size() >= 3, "fewer than three stock refusal patterns");
    for (const std::string& pattern : cfg.refusal_patterns) {
        require(classify_answer(pattern + " -- so no description.", cfg) ==
                    AnswerStatus::refusal,
                "stock refusal opener not classified as refusal: " + pattern);
    }
    require(classify_answer("I am the queen of this canvas.", cfg) == AnswerStatus::usable,
            "plain answer misclassified");

    const NoteSplit split =
        strip_note("I am a noblewoman. The ermine rests on my arm.\n\n"
                   "Note: this description is fictional.");
    require(split.note.has_value(), "trailing note not detected");
    require(split.body.find("Note:") == std::string::npos, "note text leaked into speech");
    require(split.body.find("ermine rests") != std::string::npos, "body lost content");

    // Randomized cap: any text comes back at most two sentences long and as
    // a prefix of the input.
    std::mt19937 rng(20260818);
    std::uniform_int_distribution<int> nsent(0, 6), nword(1, 8), punct(0, 2);
    for (int i = 0; i < 200; ++i) {
        std::string text;
        const int sentences = nsent(rng);
        for (int s = 0; s < sentences; ++s) {
            const int words = nword(rng);
            for (int w = 0; w < words; ++w) text += (w ? " word" : "Word");
            text += std::string(1, ".!?"[punct(rng)]) + " ";
        }
        const std::string capped = enforce_length(text, 2, cfg.abbreviations);
        require(count_sentences(capped, cfg.abbreviations) <= 2, "cap exceeded");
        require(text.rfind(capped, 0) == 0, "capped text is not a prefix of the input");
    }

    // Two-phase mock: the detailed ask refuses, the simple fallback lands.
    MockVisionBackend two_phase(std::vector<std::string>{
        "I cannot do that", "I am the king in this portrait. My gaze is steady."});
    PromptSpec spec;
    spec.mode = PromptMode::detailed;
    spec.gender = Gender::male;
    spec.metadata = ArtworkMetadata{"Hans Holbein", "Henry VIII", 1540, "henry.png"};
    const NarrationOutcome out =
        narrate(two_phase, "henry.png", spec, 0, CurationConfig::defaults());
    require(out.attempts.size() == 2, "fallback trace is not two attempts");
    require(out.attempts[0].mode == PromptMode::detailed &&
                out.attempts[0].status == AnswerStatus::refusal,
            "first attempt should be the refused detailed ask");
    require(out.attempts[1].mode == PromptMode::simple &&
                out.attempts[1].status == AnswerStatus::usable,
            "second attempt should be the usable simple fallback");
    require(out.result.status == AnswerStatus::usable, "fallback result not usable");
}

// ---------------------------------------------------------------------------
// Criterion 7: duration policy and chunked animation.

void duration_suite() {
    std::string text;
    for (int i = 0; i < 120; ++i) text += (i ? " word" : "word");
    MockTtsBackend tts;
    const AudioSegment audio = synthesize(tts, text, VoiceChoice{"af_heart", Gender::female});
    require(audio.samples.size() == 768000, "mock TTS pace is off for 120 words");
    require_near(audio.duration_s(), 48.0, 1e-9, "120-word duration");

    const std::vector<AudioSegment> chunks = chunk_audio(audio, 20.0, 1.5);
    require(chunks.size() == 3, "48 s should split into ceil(48/20) = 3 chunks");
    size_t total = 0;
    for (const AudioSegment& c : chunks) {
        require(!c.samples.empty() && c.samples.size() <= 320000, "chunk exceeds 20 s");
        total += c.samples.size();
    }
    require(total == audio.samples.size(), "chunk concatenation is not sample-exact");
    std::vector<float> glued;
    for (const AudioSegment& c : chunks) glued.insert(glued.end(), c.samples.begin(),
                                                      c.samples.end());
    require(glued == audio.samples, "chunk concatenation reordered samples");

    MockAnimationBackend anim;
    const ImageBuffer face(32, 32, 3, 200);
    const FrameSequence seq = animate_chunks(anim, face, chunks);
    long long want = 0;
    for (const AudioSegment& c : chunks) want += std::llround(c.duration_s() * anim.fps());
    require(static_cast<long long>(seq.frames.size()) == want,
            "animate_chunks frame count violates the round-sum rule");
}

// ---------------------------------------------------------------------------
// Criterion 8: end-to-end determinism through the installed CLI.

int run_cli(const std::string& cli, const std::string& args, const fs::path& log) {
    const std::string cmd = "\"" + cli + "\" " + args + " >\"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    require(status != -1, "failed to spawn the CLI");
    require(WIFEXITED(status), "CLI did not exit normally");
    return WEXITSTATUS(status);
}

void cli_determinism_suite(const std::string& cli) {
    Scratch tmp;
    const fs::path image = tmp.path / "gallery_lady.png";
    write_png(image, portrait_image());
    const fs::path noface = tmp.path / "plain_wall.png";
    write_png(noface, ImageBuffer(64, 64, 3, 128));
    const fs::path log = tmp.path / "cli.log";

    for (const char* out : {"run_a", "run_b"}) {
        const int code = run_cli(cli,
                                 "run \"" + image.string() + "\" --mock-all --out \"" +
                                     (tmp.path / out).string() + "\"",
                                 log);
        require(code == 0, "run exited with code " + std::to_string(code) + ", see " +
                               file_bytes(log));
    }

    const fs::path dir_a = tmp.path / "run_a" / "gallery_lady";
    const fs::path dir_b = tmp.path / "run_b" / "gallery_lady";
    require(file_bytes(dir_a / "manifest.json") == file_bytes(dir_b / "manifest.json"),
            "manifests differ between identical runs");

    const RunManifest manifest = load_manifest(dir_a / "manifest.json");
    require(manifest.faces.size() == 1, "expected exactly one face on the portrait fixture");
    const FaceEntry& face = manifest.faces[0];
    require(face.state == FaceState::composited, "face did not reach the composited state");
    const std::string video_name = face.assets.back().path;
    // The artifact name carries the crop geometry; identical runs must agree.
    const ArtifactName decoded = decode_artifact_name(video_name);
    require(decoded.stem == "gallery_lady", "artifact stem mismatch: " + video_name);
    require(fs::exists(dir_b / video_name), "second run used a different artifact name");
    require(file_bytes(dir_a / video_name) == file_bytes(dir_b / video_name),
            "final videos differ byte-for-byte");

    // Decoded frames are pixel-identical, not merely equal as files.
    const Mp4Media media_a = read_mp4(dir_a / video_name);
    const Mp4Media media_b = read_mp4(dir_b / video_name);
    require(media_a.video.frames.size() == media_b.video.frames.size(),
            "decoded frame counts differ");
    for (size_t i = 0; i < media_a.video.frames.size(); ++i) {
        require(media_a.video.frames[i] == media_b.video.frames[i],
                "decoded frame " + std::to_string(i) + " differs");
    }

    const int code = run_cli(
        cli, "run \"" + noface.string() + "\" --mock-all --out \"" +
                 (tmp.path / "run_none").string() + "\"",
        log);
    require(code == 0, "no-face run should exit 0, got " + std::to_string(code));
    const RunManifest empty =
        load_manifest(tmp.path / "run_none" / "plain_wall" / "manifest.json");
    require(empty.faces.empty(), "no-face manifest should contain zero faces");
}

// ---------------------------------------------------------------------------
// Criterion 9: resume correctness and cache scoping.

void resume_suite() {
    Scratch tmp;
    const fs::path image = tmp.path / "lady.png";
    write_png(image, portrait_image());
    const ArtworkMetadata meta{"Leonardo da Vinci", "Lady with an Ermine", 1489, "lady.png"};

    PipelineConfig cfg;
    cfg.out_dir = tmp.path / "out";

    auto fresh_mocks = [] {
        return BackendSet{std::make_shared<MockDetectionBackend>(),
                          std::make_shared<MockVisionBackend>(),
                          std::make_shared<MockTtsBackend>(),
                          std::make_shared<MockAnimationBackend>()};
    };
    auto calls = [](const BackendSet& b) {
        return std::array<int, 4>{b.detection->calls(), b.llm->calls(), b.tts->calls(),
                                  b.anim->calls()};
    };

    const BackendSet first = fresh_mocks();
    const RunResult res = run_pipeline(cfg, image, meta, first);
    require(!res.all_failed() && res.manifest.faces.size() == 1, "seed run failed");
    require(calls(first) == std::array<int, 4>{1, 1, 1, 1}, "seed run call counts off");
    const std::vector<MediaAsset> before = res.manifest.faces[0].assets;

    // Unchanged config: the caches answer everything.
    const BackendSet idle = fresh_mocks();
    const RunResult redo = resume(cfg, res.manifest_path, idle);
    require(calls(idle) == std::array<int, 4>{0, 0, 0, 0},
            "resume with unchanged config touched a backend");
    require(redo.manifest.faces[0].state == FaceState::composited, "cached face regressed");

    // Prompt-mode change: narration, voicing, animation and compositing run
    // again; detection and the crop stay cached.
    cfg.prompt_mode = PromptMode::detailed;
    const BackendSet busy = fresh_mocks();
    const RunResult redone = resume(cfg, res.manifest_path, busy);
    require(calls(busy) == std::array<int, 4>{0, 1, 1, 1},
            "prompt-mode switch should re-run exactly narration, voicing and animation");
    const std::vector<MediaAsset>& after = redone.manifest.faces[0].assets;
    require(after.size() == 4, "resumed face lost stage assets");
    require(after[0].stage_params_hash == before[0].stage_params_hash,
            "crop was recomputed although its inputs did not change");
    for (size_t i = 1; i < 4; ++i) {
        require(after[i].stage_params_hash != before[i].stage_params_hash,
                "stage " + std::to_string(i) + " kept a stale cache entry");
    }
    require(redone.manifest.faces[0].state == FaceState::composited,
            "resumed face did not recompose");
}

}  // namespace

#ifndef SPEAKING_DATA_DIR
#define SPEAKING_DATA_DIR ""
#endif
#ifndef SPEAKING_CLI_PATH
#define SPEAKING_CLI_PATH ""
#endif

int main() {
    // Baked in by the build; the environment can override in packaged runs.
    const char* data_env = std::getenv("SPEAKING_DATA_DIR");
    const char* cli_env = std::getenv("SPEAKING_CLI_PATH");
    const fs::path data_dir = data_env ? data_env : SPEAKING_DATA_DIR;
    const std::string cli = cli_env ? cli_env : SPEAKING_CLI_PATH;
    if (data_dir.empty() || cli.empty()) {
        std::cerr << "data dir and CLI path are unset\n";
        return 2;
    }

    criterion(1, "geometry oracle suite", 5.0, geometry_suite);
    criterion(2, "artifact name codec round-trip", 2.0, codec_suite);
    criterion(3, "compositor purity", 30.0, compositor_suite);
    criterion(4, "metric oracles and committed fixtures", 10.0,
              [&] { metrics_suite(data_dir); });
    criterion(5, "detection benchmark harness", 10.0, bench_suite);
    criterion(6, "narration curation", 2.0, curation_suite);
    criterion(7, "duration policy and chunked animation", 5.0, duration_suite);
    criterion(8, "end-to-end determinism", 60.0, [&] { cli_determinism_suite(cli); });
    criterion(9, "resume correctness", 30.0, resume_suite);

    return g_failures == 0 ? 0 : 1;
}
