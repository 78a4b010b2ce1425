#include "cardbox/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cardbox/errors.hpp"

namespace cardbox {

namespace {

// Closed key schema; unknown keys are configuration errors.
const std::array<const char*, 53> kKnownKeys = {
    "camera.fx", "camera.fy", "camera.cx", "camera.cy", "camera.width", "camera.height",
    "camera.rot_x", "camera.rot_y", "camera.rot_z", "camera.pos_x", "camera.pos_y",
    "camera.pos_z",
    "body.fixed_trans_x", "body.fixed_trans_z",
    "limits.torso_yaw", "limits.rot", "limits.trans",
    "tracker.resampler", "tracker.seed", "tracker.cycles_per_frame", "tracker.d_ref",
    "tracker.torso.N", "tracker.torso.e", "tracker.torso.sigma_beta_rot",
    "tracker.torso.sigma_beta_trans", "tracker.torso.sigma_gamma",
    "tracker.left_arm.N", "tracker.left_arm.e", "tracker.left_arm.sigma_beta_rot",
    "tracker.left_arm.sigma_gamma",
    "tracker.right_arm.N", "tracker.right_arm.e", "tracker.right_arm.sigma_beta_rot",
    "tracker.right_arm.sigma_gamma",
    "segment.sigma_floor",
    "init.M", "init.sigma_alpha", "init.max_iterations", "init.rel_improvement",
    "init.stall_iterations", "init.d_ref1", "init.d_ref2", "init.d_ref3",
    "synth.motion", "synth.frames", "synth.amplitude", "synth.max_step", "synth.seed",
    "input.kind",
    "paths.sizes_file", "paths.background_model", "paths.keyframes_file",
    "compare.runs",
};

bool is_known_key(const std::string& key) {
    return std::find_if(kKnownKeys.begin(), kKnownKeys.end(),
                        [&](const char* k) { return key == k; }) != kKnownKeys.end();
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double_value(const std::string& key, const std::string& value) {
    double v = 0.0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size() || !std::isfinite(v))
        throw ConfigError("config key " + key + ": invalid numeric value '" + value + "'");
    return v;
}

}  // namespace

KeyValueConfig KeyValueConfig::from_string(const std::string& text) {
    KeyValueConfig cfg;
    std::stringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected key=value, got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        if (!is_known_key(key)) throw ConfigError("unknown config key: " + key);
        if (cfg.values_.count(key)) throw ConfigError("duplicate config key: " + key);
        cfg.values_[key] = value;
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_double_value(key, it->second);
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::uint64_t v = 0;
    const auto res = std::from_chars(it->second.data(), it->second.data() + it->second.size(), v);
    if (res.ec != std::errc{} || res.ptr != it->second.data() + it->second.size())
        throw ConfigError("config key " + key + ": invalid unsigned value '" + it->second + "'");
    return v;
}

long KeyValueConfig::get_long(const std::string& key, long fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    long v = 0;
    const auto res = std::from_chars(it->second.data(), it->second.data() + it->second.size(), v);
    if (res.ec != std::errc{} || res.ptr != it->second.data() + it->second.size())
        throw ConfigError("config key " + key + ": invalid integer value '" + it->second + "'");
    return v;
}

double KeyValueConfig::require_double(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing config key: " + key);
    return get_double(key, 0.0);
}

std::uint64_t KeyValueConfig::require_u64(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing config key: " + key);
    return get_u64(key, 0);
}

std::string KeyValueConfig::require_string(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing config key: " + key);
    return values_.at(key);
}

CameraModel RunConfig::make_camera() const {
    try {
        return CameraModel::from_pose_values(fx, fy, cx, cy, width, height, camera_pose);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("camera configuration: ") + e.what());
    }
}

SizeParams RunConfig::body_sizes() const {
    if (sizes_file.empty()) return SizeParams::canonical();
    return load_sizes(sizes_file);
}

namespace {

PostureParams parse_posture_key(const KeyValueConfig& kv, const std::string& key,
                                const PostureParams& fallback) {
    if (!kv.has(key)) return fallback;
    try {
        return parse_posture_line(kv.get_string(key, ""));
    } catch (const DataError& e) {
        throw ConfigError("config key " + key + ": " + e.what());
    }
}

void check_positive(const std::string& key, double v) {
    if (!(v > 0.0)) throw ConfigError("config key " + key + ": must be positive");
}

StageConfig parse_stage(const KeyValueConfig& kv, const std::string& prefix,
                        const StageConfig& defaults, bool has_translation, bool required) {
    StageConfig sc = defaults;
    auto stage_double = [&](const char* name, double fallback) {
        const std::string key = prefix + name;
        return required ? kv.require_double(key) : kv.get_double(key, fallback);
    };
    const std::string n_key = prefix + "N";
    sc.particle_count = static_cast<std::size_t>(
        required ? kv.require_u64(n_key) : kv.get_u64(n_key, defaults.particle_count));
    if (sc.particle_count < 2) throw ConfigError("config key " + n_key + ": must be >= 2");
    sc.survival_rate = stage_double("e", defaults.survival_rate);
    if (!(sc.survival_rate > 0.0) || sc.survival_rate > 1.0)
        throw ConfigError("config key " + prefix + "e: must be in (0, 1]");
    sc.sigma_beta_rot = stage_double("sigma_beta_rot", defaults.sigma_beta_rot);
    check_positive(prefix + "sigma_beta_rot", sc.sigma_beta_rot);
    if (has_translation) {
        sc.sigma_beta_trans = stage_double("sigma_beta_trans", defaults.sigma_beta_trans);
        check_positive(prefix + "sigma_beta_trans", sc.sigma_beta_trans);
    }
    sc.sigma_gamma = stage_double("sigma_gamma", defaults.sigma_gamma);
    check_positive(prefix + "sigma_gamma", sc.sigma_gamma);
    return sc;
}

}  // namespace

RunConfig parse_run_config(const KeyValueConfig& kv, bool require_tracker_block) {
    RunConfig cfg;

    cfg.fx = kv.get_double("camera.fx", cfg.fx);
    cfg.fy = kv.get_double("camera.fy", cfg.fy);
    cfg.cx = kv.get_double("camera.cx", cfg.cx);
    cfg.cy = kv.get_double("camera.cy", cfg.cy);
    cfg.width = static_cast<int>(kv.get_long("camera.width", cfg.width));
    cfg.height = static_cast<int>(kv.get_long("camera.height", cfg.height));
    if (cfg.width <= 0 || cfg.height <= 0)
        throw ConfigError("config keys camera.width/camera.height: must be positive");
    cfg.camera_pose = {kv.get_double("camera.rot_x", 0.0), kv.get_double("camera.rot_y", 0.0),
                       kv.get_double("camera.rot_z", 0.0), kv.get_double("camera.pos_x", 250.0),
                       kv.get_double("camera.pos_y", 0.0), kv.get_double("camera.pos_z", 0.0)};

    cfg.fixed_trans_x = kv.get_double("body.fixed_trans_x", 0.0);
    cfg.fixed_trans_z = kv.get_double("body.fixed_trans_z", 0.0);

    const double yaw = kv.get_double("limits.torso_yaw", cfg.limits.hi[kTorsoRotZ]);
    const double rot = kv.get_double("limits.rot", cfg.limits.hi[kTorsoRotY]);
    const double trans = kv.get_double("limits.trans", cfg.limits.hi[kTorsoTransY]);
    check_positive("limits.torso_yaw", yaw);
    check_positive("limits.rot", rot);
    check_positive("limits.trans", trans);
    for (std::size_t d = 0; d < kPostureDof; ++d) {
        const double bound = d == kTorsoRotZ ? yaw : (d == kTorsoTransY ? trans : rot);
        cfg.limits.lo[d] = -bound;
        cfg.limits.hi[d] = bound;
    }

    const std::string resampler_key = "tracker.resampler";
    const std::string resampler = require_tracker_block
                                      ? kv.require_string(resampler_key)
                                      : kv.get_string(resampler_key, "drs");
    if (resampler == "drs")
        cfg.tracker.resampler = ResamplerKind::Drs;
    else if (resampler == "srs")
        cfg.tracker.resampler = ResamplerKind::Srs;
    else
        throw ConfigError("config key tracker.resampler: expected drs or srs, got '" + resampler +
                          "'");

    cfg.tracker.seed = kv.get_u64("tracker.seed", 1);
    cfg.tracker.cycles_per_frame =
        static_cast<unsigned>(kv.get_u64("tracker.cycles_per_frame", 1));
    if (cfg.tracker.cycles_per_frame < 1)
        throw ConfigError("config key tracker.cycles_per_frame: must be >= 1");
    cfg.tracker.limits = cfg.limits;
    cfg.tracker.torso =
        parse_stage(kv, "tracker.torso.", cfg.tracker.torso, true, require_tracker_block);
    cfg.tracker.left_arm =
        parse_stage(kv, "tracker.left_arm.", cfg.tracker.left_arm, false, require_tracker_block);
    cfg.tracker.right_arm =
        parse_stage(kv, "tracker.right_arm.", cfg.tracker.right_arm, false, require_tracker_block);

    cfg.track_reference = parse_posture_key(kv, "tracker.d_ref", PostureParams{});
    if (!cfg.limits.contains(cfg.track_reference))
        throw ConfigError("config key tracker.d_ref: posture violates joint limits");

    cfg.sigma_floor = kv.get_double("segment.sigma_floor", kDefaultSigmaFloor);
    if (cfg.sigma_floor < 0.0)
        throw ConfigError("config key segment.sigma_floor: must be >= 0");

    cfg.init_hypotheses = static_cast<std::size_t>(kv.get_u64("init.M", cfg.init_hypotheses));
    if (cfg.init_hypotheses < 2) throw ConfigError("config key init.M: must be >= 2");
    cfg.init_sigma_alpha = kv.get_double("init.sigma_alpha", cfg.init_sigma_alpha);
    check_positive("init.sigma_alpha", cfg.init_sigma_alpha);
    cfg.init_max_iterations =
        static_cast<unsigned>(kv.get_u64("init.max_iterations", cfg.init_max_iterations));
    cfg.init_rel_improvement = kv.get_double("init.rel_improvement", cfg.init_rel_improvement);
    cfg.init_stall_iterations =
        static_cast<unsigned>(kv.get_u64("init.stall_iterations", cfg.init_stall_iterations));
    const auto default_refs = default_reference_postures();
    cfg.init_ref_postures[0] = parse_posture_key(kv, "init.d_ref1", default_refs[0]);
    cfg.init_ref_postures[1] = parse_posture_key(kv, "init.d_ref2", default_refs[1]);
    cfg.init_ref_postures[2] = parse_posture_key(kv, "init.d_ref3", default_refs[2]);

    cfg.synth.kind = parse_motion_kind(kv.get_string("synth.motion", "wave-hands"));
    cfg.synth.frame_count = static_cast<std::size_t>(kv.get_u64("synth.frames", 30));
    if (cfg.synth.frame_count < 1) throw ConfigError("config key synth.frames: must be >= 1");
    cfg.synth.amplitude = kv.get_double("synth.amplitude", cfg.synth.amplitude);
    if (cfg.synth.amplitude < 0.0)
        throw ConfigError("config key synth.amplitude: must be >= 0");
    cfg.synth.max_step = kv.get_double("synth.max_step", cfg.synth.max_step);
    check_positive("synth.max_step", cfg.synth.max_step);
    cfg.synth.seed = kv.get_u64("synth.seed", 1);

    const std::string input = kv.get_string("input.kind", "masks");
    if (input == "masks")
        cfg.input_kind = InputKind::Masks;
    else if (input == "frames")
        cfg.input_kind = InputKind::Frames;
    else
        throw ConfigError("config key input.kind: expected masks or frames, got '" + input + "'");

    cfg.sizes_file = kv.get_string("paths.sizes_file", "");
    cfg.background_model = kv.get_string("paths.background_model", "");
    cfg.keyframes_file = kv.get_string("paths.keyframes_file", "");

    cfg.compare_runs = static_cast<std::size_t>(kv.get_u64("compare.runs", cfg.compare_runs));
    if (cfg.compare_runs < 2 || cfg.compare_runs > 100)
        throw ConfigError("config key compare.runs: must be in [2, 100]");

    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path, bool require_tracker_block) {
    return parse_run_config(KeyValueConfig::load(path), require_tracker_block);
}

}  // namespace cardbox
