// cardbox command-line tool: background learning, model-size
// initialization, synthetic sequences, tracking and resampler comparison.
//
// Exit codes: 0 success, 1 usage/configuration error, 2 data error.

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cardbox/background.hpp"
#include "cardbox/body_model.hpp"
#include "cardbox/config.hpp"
#include "cardbox/csv.hpp"
#include "cardbox/errors.hpp"
#include "cardbox/eval.hpp"
#include "cardbox/image.hpp"
#include "cardbox/mask.hpp"
#include "cardbox/matching.hpp"
#include "cardbox/raster.hpp"
#include "cardbox/rng.hpp"
#include "cardbox/synth.hpp"
#include "cardbox/tracker.hpp"

namespace fs = std::filesystem;
using namespace cardbox;

namespace {

constexpr const char* kUsage = R"(usage: cardbox <command> [options] <args>

commands:
  learn-background <frames_dir> <out_model>
      Learn the per-pixel background statistics from grayscale frames.
  init-model --config <cfg> <ref1> <ref2> <ref3> <out_sizes>
      Estimate the 18 body size parameters from three reference
      silhouettes (front, side, arms raised).
  synth --config <cfg> <out_dir>
      Generate a synthetic ground-truth sequence (masks + trajectory).
  track --config <cfg> <input_dir> <out_csv> [--joints <csv>]
      Track a sequence of masks or grayscale frames.
  evaluate --config <cfg> <est_csv> <gt_csv> <out_stats>
      Per-joint mean 3D error between two trajectories.
  compare-resamplers --config <cfg> <masks_dir> <out_stats>
      Repeated tracking with both resampling strategies; per-frame cost
      and per-DOF spread statistics.

options:
  --config <path>   key=value configuration file
  --seed <n>        override the root random seed
  --threads <n>     worker cap for cost evaluation (1 = serial)
  --dump-overlays   write per-frame model/observation overlay images
  --joints <path>   also write estimated 3D joint positions (track)
)";

struct CliOptions {
    std::string command;
    fs::path config_path;
    std::optional<std::uint64_t> seed;
    unsigned threads = std::thread::hardware_concurrency();
    bool dump_overlays = false;
    fs::path joints_path;
    std::vector<std::string> positional;
};

CliOptions parse_args(int argc, char** argv) {
    if (argc < 2) throw ConfigError("missing command\n" + std::string(kUsage));
    CliOptions opt;
    opt.command = argv[1];
    if (opt.threads == 0) opt.threads = 1;
    for (int i = 2; i < argc; ++i) {
        const std::string arg = argv[i];
        auto next = [&](const char* flag) -> std::string {
            if (i + 1 >= argc) throw ConfigError(std::string(flag) + " needs a value");
            return argv[++i];
        };
        auto numeric = [&](const char* flag) -> std::uint64_t {
            const std::string value = next(flag);
            try {
                std::size_t pos = 0;
                const std::uint64_t v = std::stoull(value, &pos);
                if (pos != value.size()) throw std::invalid_argument(value);
                return v;
            } catch (const std::exception&) {
                throw ConfigError(std::string(flag) + ": invalid number '" + value + "'");
            }
        };
        if (arg == "--config")
            opt.config_path = next("--config");
        else if (arg == "--seed")
            opt.seed = numeric("--seed");
        else if (arg == "--threads")
            opt.threads = static_cast<unsigned>(numeric("--threads"));
        else if (arg == "--dump-overlays")
            opt.dump_overlays = true;
        else if (arg == "--joints")
            opt.joints_path = next("--joints");
        else if (arg.rfind("--", 0) == 0)
            throw ConfigError("unknown flag: " + arg);
        else
            opt.positional.push_back(arg);
    }
    return opt;
}

RunConfig load_config(const CliOptions& opt, bool require_tracker_block) {
    if (opt.config_path.empty()) throw ConfigError("--config is required for this command");
    RunConfig cfg = load_run_config(opt.config_path, require_tracker_block);
    if (opt.seed) {
        cfg.tracker.seed = *opt.seed;
        cfg.synth.seed = *opt.seed;
    }
    cfg.tracker.threads = opt.threads;
    return cfg;
}

void expect_positional(const CliOptions& opt, std::size_t n, const char* names) {
    if (opt.positional.size() != n)
        throw ConfigError("command " + opt.command + " expects arguments: " + names);
}

std::string frame_name(const char* prefix, std::size_t index) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%05zu.pgm", prefix, index);
    return buf;
}

// ---------------------------------------------------------------- commands

int cmd_learn_background(const CliOptions& opt) {
    expect_positional(opt, 2, "<frames_dir> <out_model>");
    const auto files = list_frame_files(opt.positional[0]);
    if (files.size() < 2) throw DataError("need at least 2 frames in " + opt.positional[0]);
    std::vector<GrayImage> frames;
    frames.reserve(files.size());
    for (const auto& f : files) frames.push_back(load_gray(f));
    const BackgroundModel bg = learn_background(frames);
    save_background(bg, opt.positional[1]);
    std::cout << "learned background from " << frames.size() << " frames (" << bg.width << "x"
              << bg.height << ")\n";
    return 0;
}

int cmd_init_model(const CliOptions& opt) {
    expect_positional(opt, 4, "<ref_front> <ref_side> <ref_arms> <out_sizes>");
    const RunConfig cfg = load_config(opt, false);
    const CameraModel cam = cfg.make_camera();

    InitConfig init;
    init.hypothesis_count = cfg.init_hypotheses;
    init.sigma_alpha = cfg.init_sigma_alpha;
    init.max_iterations = cfg.init_max_iterations;
    init.rel_improvement = cfg.init_rel_improvement;
    init.stall_iterations = cfg.init_stall_iterations;
    init.ref_postures = cfg.init_ref_postures;
    for (int j = 0; j < 3; ++j) init.ref_masks[j] = load_mask_pgm(opt.positional[j]);
    init.seed = cfg.tracker.seed;
    init.threads = opt.threads;

    const SizeParams estimated =
        estimate_sizes(init, cfg.body_sizes(), cam, cfg.fixed_trans_x, cfg.fixed_trans_z,
                       cfg.limits);
    save_sizes(estimated, opt.positional[3]);

    const BodyModel model =
        build_model(estimated, cfg.fixed_trans_x, cfg.fixed_trans_z, cfg.limits);
    Cost total = 0;
    for (int j = 0; j < 3; ++j)
        total += cost_of_posture(model, init.ref_postures[j], cam, init.ref_masks[j]);
    std::cout << "estimated sizes written to " << opt.positional[3]
              << " (summed reference cost " << total << " px)\n";
    return 0;
}

int cmd_synth(const CliOptions& opt) {
    expect_positional(opt, 1, "<out_dir>");
    const RunConfig cfg = load_config(opt, false);
    const CameraModel cam = cfg.make_camera();

    TrajectorySpec spec = cfg.synth;
    if (spec.kind == MotionKind::Keyframes) {
        if (cfg.keyframes_file.empty())
            throw ConfigError("missing config key: paths.keyframes_file");
        std::ifstream in(cfg.keyframes_file);
        if (!in) throw DataError("cannot open keyframes: " + cfg.keyframes_file.string());
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            const auto comma = line.find(',');
            if (comma == std::string::npos) throw DataError("malformed keyframe line: " + line);
            spec.keyframes.emplace_back(std::stoull(line.substr(0, comma)),
                                        parse_posture_line(line.substr(comma + 1)));
        }
    }

    const SyntheticSequence seq = generate_sequence(spec, cfg.body_sizes(), cam,
                                                    cfg.fixed_trans_x, cfg.fixed_trans_z,
                                                    cfg.limits);
    if (seq.clamped)
        std::cerr << "warning: trajectory hit joint limits and was clamped\n";

    const fs::path out_dir = opt.positional[0];
    fs::create_directories(out_dir);
    std::vector<TrajectoryRow> rows;
    for (std::size_t f = 0; f < seq.postures.size(); ++f) {
        save_mask_pgm(seq.masks[f], out_dir / frame_name("frame", f));
        rows.push_back({f, seq.postures[f], 0});
    }
    save_trajectory_csv(rows, out_dir / "trajectory.csv");

    const BodyModel model =
        build_model(cfg.body_sizes(), cfg.fixed_trans_x, cfg.fixed_trans_z, cfg.limits);
    save_joints_csv(joints_of_trajectory(model, seq.postures), out_dir / "joints.csv");
    std::cout << "wrote " << seq.postures.size() << " frames to " << out_dir.string() << "\n";
    return 0;
}

std::vector<SilhouetteMask> load_observations(const RunConfig& cfg, const fs::path& dir) {
    const auto files = list_frame_files(dir);
    if (files.empty()) throw DataError("no frames found in " + dir.string());
    std::vector<SilhouetteMask> masks;
    masks.reserve(files.size());
    if (cfg.input_kind == InputKind::Masks) {
        for (const auto& f : files) masks.push_back(load_mask_pgm(f));
    } else {
        if (cfg.background_model.empty())
            throw ConfigError("missing config key: paths.background_model");
        const BackgroundModel bg = load_background(cfg.background_model);
        for (const auto& f : files) masks.push_back(segment(bg, load_gray(f), cfg.sigma_floor));
    }
    return masks;
}

int cmd_track(const CliOptions& opt) {
    expect_positional(opt, 2, "<input_dir> <out_csv>");
    const RunConfig cfg = load_config(opt, true);
    const CameraModel cam = cfg.make_camera();
    const std::vector<SilhouetteMask> observations = load_observations(cfg, opt.positional[0]);
    for (const SilhouetteMask& m : observations)
        if (m.width() != cam.width() || m.height() != cam.height())
            throw DataError("observation size does not match camera configuration");

    const BodyModel model =
        build_model(cfg.body_sizes(), cfg.fixed_trans_x, cfg.fixed_trans_z, cfg.limits);
    HierarchicalTracker tracker(model, cam, cfg.tracker);
    tracker.init(cfg.track_reference, observations[0]);

    const fs::path out_csv = opt.positional[1];
    fs::path overlay_dir;
    if (opt.dump_overlays) {
        overlay_dir = out_csv.parent_path() / (out_csv.stem().string() + "_overlays");
        fs::create_directories(overlay_dir);
    }

    CostEvaluator render(model, cam);
    std::vector<TrajectoryRow> rows;
    std::vector<PostureParams> estimates;
    for (std::size_t f = 0; f < observations.size(); ++f) {
        const FrameEstimate est = f == 0 ? tracker.current_estimate(observations[0])
                                         : tracker.track_frame(observations[f]);
        rows.push_back({f, est.posture, est.cost});
        estimates.push_back(est.posture);
        if (opt.dump_overlays) {
            render(est.posture, observations[f]);
            SilhouetteMask overlay = render.last_render();
            overlay.or_with(observations[f]);
            save_mask_pgm(overlay, overlay_dir / frame_name("overlay", f));
            save_mask_pgm(xor_difference(render.last_render(), observations[f]),
                          overlay_dir / frame_name("xor", f));
        }
    }
    save_trajectory_csv(rows, out_csv);
    if (!opt.joints_path.empty())
        save_joints_csv(joints_of_trajectory(model, estimates), opt.joints_path);
    std::cout << "tracked " << observations.size() << " frames -> " << out_csv.string() << "\n";
    return 0;
}

int cmd_evaluate(const CliOptions& opt) {
    expect_positional(opt, 3, "<est_csv> <gt_csv> <out_stats>");
    const RunConfig cfg = load_config(opt, false);
    const auto est_rows = load_trajectory_csv(opt.positional[0]);
    const auto gt_rows = load_trajectory_csv(opt.positional[1]);
    if (est_rows.size() != gt_rows.size())
        throw DataError("trajectory lengths differ: " + std::to_string(est_rows.size()) +
                        " vs " + std::to_string(gt_rows.size()));
    if (est_rows.empty()) throw DataError("empty trajectories");

    const BodyModel model =
        build_model(cfg.body_sizes(), cfg.fixed_trans_x, cfg.fixed_trans_z, cfg.limits);
    std::vector<PostureParams> est, gt;
    for (const auto& r : est_rows) est.push_back(r.posture);
    for (const auto& r : gt_rows) gt.push_back(r.posture);
    const auto est_joints = joints_of_trajectory(model, est);
    const auto gt_joints = joints_of_trajectory(model, gt);

    std::vector<StatRow> stats;
    for (std::size_t f = 0; f < est_joints.size(); ++f)
        for (std::size_t j = 0; j < JointPositions::kCount; ++j)
            stats.push_back({static_cast<long>(f),
                             std::string("err3d_") + JointPositions::names()[j],
                             norm(est_joints[f].by_index(j) - gt_joints[f].by_index(j))});
    const JointErrors errors = eval_3d_error(est_joints, gt_joints);
    for (std::size_t j = 0; j < JointPositions::kCount; ++j)
        stats.push_back({-1, std::string("mean3d_") + JointPositions::names()[j],
                         errors.mean_cm[j]});
    save_stats_csv(stats, opt.positional[2]);
    std::cout << "wrote evaluation statistics to " << opt.positional[2] << "\n";
    return 0;
}

int cmd_compare_resamplers(const CliOptions& opt) {
    expect_positional(opt, 2, "<masks_dir> <out_stats>");
    RunConfig cfg = load_config(opt, true);
    const CameraModel cam = cfg.make_camera();
    const std::vector<SilhouetteMask> observations = load_observations(cfg, opt.positional[0]);
    const BodyModel model =
        build_model(cfg.body_sizes(), cfg.fixed_trans_x, cfg.fixed_trans_z, cfg.limits);

    const std::size_t runs = cfg.compare_runs;
    std::vector<StatRow> stats;
    const char* names[2] = {"drs", "srs"};
    for (int strategy = 0; strategy < 2; ++strategy) {
        std::vector<RunTrajectory> trajectories(runs);
        for (std::size_t r = 0; r < runs; ++r) {
            TrackerConfig tc = cfg.tracker;
            tc.resampler = strategy == 0 ? ResamplerKind::Drs : ResamplerKind::Srs;
            tc.seed = derive_seed(cfg.tracker.seed,
                                  {static_cast<std::uint64_t>(64 + strategy), r});
            HierarchicalTracker tracker(model, cam, tc);
            tracker.init(cfg.track_reference, observations[0]);
            RunTrajectory& run = trajectories[r];
            for (std::size_t f = 0; f < observations.size(); ++f) {
                const FrameEstimate est = f == 0 ? tracker.current_estimate(observations[0])
                                                 : tracker.track_frame(observations[f]);
                run.postures.push_back(est.posture);
                run.costs.push_back(est.cost);
            }
        }
        const RunStatistics rs = reproducibility(trajectories);
        for (std::size_t f = 0; f < rs.frame_count; ++f) {
            stats.push_back({static_cast<long>(f), std::string("cost_mean_") + names[strategy],
                             rs.cost_mean[f]});
            stats.push_back({static_cast<long>(f), std::string("cost_std_") + names[strategy],
                             rs.cost_std[f]});
            for (std::size_t d = 0; d < kPostureDof; ++d)
                stats.push_back({static_cast<long>(f),
                                 "d" + std::to_string(d + 1) + "_std_" + names[strategy],
                                 rs.dof_std[f][d]});
        }
        stats.push_back({-1, std::string("mean_cost_") + names[strategy], rs.mean_cost()});
        stats.push_back({-1, std::string("mean_dof_std_") + names[strategy], rs.mean_dof_std()});
        std::cout << names[strategy] << ": mean cost " << rs.mean_cost() << " px, mean DOF std "
                  << rs.mean_dof_std() << "\n";
    }
    save_stats_csv(stats, opt.positional[1]);
    std::cout << "wrote comparison statistics to " << opt.positional[1] << " (" << runs
              << " runs per strategy)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        const CliOptions opt = parse_args(argc, argv);
        if (opt.command == "learn-background") return cmd_learn_background(opt);
        if (opt.command == "init-model") return cmd_init_model(opt);
        if (opt.command == "synth") return cmd_synth(opt);
        if (opt.command == "track") return cmd_track(opt);
        if (opt.command == "evaluate") return cmd_evaluate(opt);
        if (opt.command == "compare-resamplers") return cmd_compare_resamplers(opt);
        if (opt.command == "--help" || opt.command == "-h" || opt.command == "help") {
            std::cout << kUsage;
            return 0;
        }
        throw ConfigError("unknown command: " + opt.command + "\n" + kUsage);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
