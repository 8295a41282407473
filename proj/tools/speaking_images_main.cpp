// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "speaking/compose/mp4.hpp"
#include "speaking/core/errors.hpp"
#include "speaking/core/manifest.hpp"
#include "speaking/eval/detection_bench.hpp"
#include "speaking/eval/frechet.hpp"
#include "speaking/eval/metrics.hpp"
#include "speaking/eval/report.hpp"
#include "speaking/pipeline/backends.hpp"
#include "speaking/pipeline/dataset.hpp"
#include "speaking/pipeline/runner.hpp"

namespace {

using namespace speaking;

struct RunArgs {
    std::string image;
    std::string meta_csv;
    std::string mode = "simple";
    std::string faces = "main";
    double max_audio = 20.0;
    double window = 1.5;
    double pose_limit = 30.0;
    bool pose_block = false;
    double fps = 25.0;
    int max_sentences = 2;
    int retries = 1;
    std::string backends_arg;
    std::string out = "out";
    std::string resume_manifest;
    bool mock_all = false;
    bool sidecar = false;
    int parallel = 1;
    std::string default_gender = "female";
    std::vector<std::string> gender_overrides;
    std::string refusals;
};

Gender parse_gender(const std::string& s) {
    if (s == "female") return Gender::female;
    if (s == "male") return Gender::male;
    throw Error("gender must be 'female' or 'male', got '" + s + "'");
}

FaceSelection parse_faces(const std::string& s) {
    FaceSelection sel;
    if (s == "main") {
        sel.mode = FacePolicyMode::main_only;
        return sel;
    }
    if (s == "all") {
        sel.mode = FacePolicyMode::all;
        return sel;
    }
    sel.mode = FacePolicyMode::explicit_ids;
    size_t pos = 0;
    while (pos <= s.size()) {
        const size_t comma = s.find(',', pos);
        const std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos
                                                                         : comma - pos);
        try {
            size_t used = 0;
            const int id = std::stoi(tok, &used);
            if (used != tok.size() || id < 0) throw std::invalid_argument(tok);
            sel.ids.push_back(id);
        } catch (const std::exception&) {
            throw Error("--faces expects 'main', 'all' or comma-separated ids, got '" + s + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (sel.ids.empty()) throw Error("--faces id list is empty");
    return sel;
}

int do_run(const RunArgs& a) {
    BackendSpecs specs;
    specs.detection = specs.llm = specs.tts = specs.anim = "";
    if (!a.backends_arg.empty()) specs = parse_backend_arg(a.backends_arg, specs);
    specs = apply_env_defaults(specs);
    if (a.mock_all) specs = BackendSpecs{};

    PipelineConfig cfg;
    cfg.backends = specs;
    cfg.prompt_mode = a.mode == "detailed" ? PromptMode::detailed : PromptMode::simple;
    cfg.max_sentences = a.max_sentences;
    cfg.retries = a.retries;
    cfg.max_audio_len_s = a.max_audio;
    cfg.chunk_search_window_s = a.window;
    cfg.pose_threshold_deg = a.pose_limit;
    cfg.pose_block = a.pose_block;
    cfg.fps = a.fps;
    cfg.out_dir = a.out;
    cfg.faces = parse_faces(a.faces);
    cfg.default_gender = parse_gender(a.default_gender);
    cfg.frame_sidecar = a.sidecar;
    cfg.parallel_faces = a.parallel;
    if (!a.refusals.empty()) cfg.refusal_patterns_file = a.refusals;
    for (const auto& item : a.gender_overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw Error("--gender expects ID=female|male, got '" + item + "'");
        }
        cfg.gender_overrides[std::stoi(item.substr(0, eq))] = parse_gender(item.substr(eq + 1));
    }

    std::optional<ArtworkMetadata> meta;
    if (!a.meta_csv.empty()) {
        const auto rows = load_dataset_manifest(a.meta_csv);
        const std::string stem = std::filesystem::path(a.image).stem().string();
        meta = find_metadata(rows, stem);
        if (!meta) {
            throw Error("no row in " + a.meta_csv + " matches image stem '" + stem + "'");
        }
    }

    const BackendSet set = make_backends(specs, cfg.fps);
    const RunResult res = a.resume_manifest.empty()
                              ? run_pipeline(cfg, a.image, meta, set)
                              : resume(cfg, a.resume_manifest, set, meta);

    for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << "manifest: " << res.manifest_path.string() << '\n';
    if (res.manifest.faces.empty()) {
        std::cout << "no faces detected\n";
    }
    for (const auto& e : res.manifest.faces) {
        std::cout << "face " << e.face.face_id << ": " << to_string(e.state);
        if (!e.failure_reason.empty()) std::cout << " (" << e.failure_reason << ")";
        std::cout << '\n';
        for (const auto& asset : e.assets) {
            if (asset.kind == AssetKind::final_video) {
                std::cout << "  video: " << (res.run_dir / asset.path).string() << '\n';
            }
        }
    }
    return res.all_failed() ? 1 : 0;
}

int do_bench(const std::string& corpus_dir, const std::string& annotations,
             const std::vector<std::string>& backend_specs, double iou_threshold,
             const std::string& csv_out) {
    const auto corpus = load_corpus(corpus_dir, annotations);
    std::vector<std::shared_ptr<DetectionBackend>> owners;
    std::vector<DetectionBackend*> raw;
    for (const auto& spec : backend_specs) {
        owners.push_back(make_detection_backend(spec));
        raw.push_back(owners.back().get());
    }
    const DetectorBenchReport report = benchmark_detectors(raw, corpus, iou_threshold);
    const std::string csv = confusion_csv(report);
    std::cout << csv;
    for (const auto& [backend, why] : report.failures) {
        std::cerr << "backend " << backend << " failed: " << why << '\n';
    }
    if (!csv_out.empty()) {
        std::ofstream out(csv_out, std::ios::binary | std::ios::trunc);
        if (!out || !out.write(csv.data(), static_cast<std::streamsize>(csv.size()))) {
            throw IoError("cannot write " + csv_out);
        }
    }
    return !report.results.empty() || report.failures.empty() ? 0 : 1;
}

int do_eval(const std::string& run_dir_arg, const std::string& fid_fixture,
            const std::string& fvd_fixture) {
    const std::filesystem::path run_dir = run_dir_arg;
    const RunManifest manifest = load_manifest(run_dir / "manifest.json");

    EvaluationReport rep;
    for (const auto& entry : manifest.faces) {
        const MediaAsset* crop_asset = nullptr;
        const MediaAsset* anim_asset = nullptr;
        for (const auto& a : entry.assets) {
            if (a.kind == AssetKind::face_crop) crop_asset = &a;
            if (a.kind == AssetKind::face_animation) anim_asset = &a;
        }
        if (!crop_asset || !anim_asset) continue;
        const ImageBuffer crop = read_png(run_dir / crop_asset->path);
        const Mp4Media anim = read_mp4(run_dir / anim_asset->path);
        rep.per_face_psnr.push_back(psnr_drift(crop, anim.video));
    }
    rep.psnr_median_db = psnr_median(rep.per_face_psnr);
    if (!fid_fixture.empty()) {
        const EmbeddingFixture fx = load_embedding_fixture(fid_fixture);
        rep.fid = fid_score(fx.real, fx.generated);
    }
    if (!fvd_fixture.empty()) {
        const EmbeddingFixture fx = load_embedding_fixture(fvd_fixture);
        rep.fvd = fid_score(fx.real, fx.generated);
    }
    write_report(run_dir, rep);
    std::cout << report_to_text(rep);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Turns an artwork image into a short video in which a depicted "
                 "character narrates the piece in the first person."};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run_cmd = app.add_subcommand("run", "Run the pipeline on one image");
    run_cmd->add_option("image", run_args.image, "Input image (PNG)")->required();
    run_cmd->add_option("--meta", run_args.meta_csv,
                        "Artwork metadata CSV (author,title,date,source_file)");
    run_cmd->add_option("--mode", run_args.mode, "Prompt mode")
        ->check(CLI::IsMember({"simple", "detailed"}));
    run_cmd->add_option("--faces", run_args.faces, "main | all | comma-separated face ids");
    run_cmd->add_option("--max-audio", run_args.max_audio, "Max seconds per animation chunk");
    run_cmd->add_option("--window", run_args.window, "Chunk split search window (s)");
    run_cmd->add_option("--pose-limit", run_args.pose_limit, "Max |yaw| in degrees");
    run_cmd->add_flag("--pose-block", run_args.pose_block,
                      "Fail faces over the pose limit instead of warning");
    run_cmd->add_option("--fps", run_args.fps, "Animation frame rate");
    run_cmd->add_option("--max-sentences", run_args.max_sentences, "Narration length cap");
    run_cmd->add_option("--retries", run_args.retries, "Re-asks after a refusal");
    run_cmd->add_option("--backends", run_args.backends_arg,
                        "detection=SPEC,llm=SPEC,tts=SPEC,anim=SPEC (SPEC: mock, mock:PATH, "
                        "exec:CMD, http://...)");
    run_cmd->add_option("--out", run_args.out, "Output directory");
    run_cmd->add_option("--resume", run_args.resume_manifest,
                        "Resume from an existing manifest (reuses its image and metadata)");
    run_cmd->add_flag("--mock-all", run_args.mock_all, "Force every backend to its mock");
    run_cmd->add_flag("--sidecar", run_args.sidecar, "Write lossless PNG frames next to the video");
    run_cmd->add_option("--parallel-faces", run_args.parallel, "Concurrent face jobs");
    run_cmd->add_option("--default-gender", run_args.default_gender,
                        "Fallback when the detector gives no usable label");
    run_cmd->add_option("--gender", run_args.gender_overrides,
                        "Curator override per face: ID=female|male (repeatable)");
    run_cmd->add_option("--refusals", run_args.refusals, "Extra refusal patterns file");

    std::string bench_corpus, bench_annotations, bench_csv;
    std::vector<std::string> bench_backends{"mock"};
    double bench_iou = 0.5;
    CLI::App* bench_cmd =
        app.add_subcommand("bench-detect", "Confusion-matrix benchmark of face detectors");
    bench_cmd->add_option("corpus", bench_corpus, "Directory of <stem>.png images")->required();
    bench_cmd->add_option("annotations", bench_annotations,
                          "Ground truth: 'stem x y w h' lines, 'stem none' for face-free images")
        ->required();
    bench_cmd->add_option("--backends", bench_backends, "Detection backend specs");
    bench_cmd->add_option("--iou", bench_iou, "IoU threshold for a true positive");
    bench_cmd->add_option("--csv", bench_csv, "Also write the table to this file");

    std::string eval_run_dir, eval_fid, eval_fvd;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Quality metrics for a finished run");
    eval_cmd->add_option("run-dir", eval_run_dir, "Directory holding manifest.json")->required();
    eval_cmd->add_option("--embeddings", eval_fid, "FID embedding fixture (JSON)");
    eval_cmd->add_option("--fvd-embeddings", eval_fvd, "FVD embedding fixture (JSON)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run_cmd->parsed()) return do_run(run_args);
        if (bench_cmd->parsed()) {
            return do_bench(bench_corpus, bench_annotations, bench_backends, bench_iou,
                            bench_csv);
        }
        if (eval_cmd->parsed()) return do_eval(eval_run_dir, eval_fid, eval_fvd);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
