#ifndef CARDBOX_CONFIG_HPP_
#define CARDBOX_CONFIG_HPP_

#include <filesystem>
#include <map>
#include <string>

#include "cardbox/background.hpp"
#include "cardbox/body_model.hpp"
#include "cardbox/camera.hpp"
#include "cardbox/synth.hpp"
#include "cardbox/tracker.hpp"

namespace cardbox {

enum class InputKind { Masks, Frames };

/// Flat key=value configuration ('#' comments, one key per line, sections
/// as dotted prefixes). Unknown and duplicate keys are rejected; every
/// value error names its key.
class KeyValueConfig {
public:
    static KeyValueConfig load(const std::filesystem::path& path);
    static KeyValueConfig from_string(const std::string& text);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    const std::map<std::string, std::string>& values() const { return values_; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    long get_long(const std::string& key, long fallback) const;

    /// Value that must be present: throws ConfigError naming the key.
    double require_double(const std::string& key) const;
    std::uint64_t require_u64(const std::string& key) const;
    std::string require_string(const std::string& key) const;

private:
    std::map<std::string, std::string> values_;
};

/// Merged, validated configuration for the command-line pipelines. Numeric
/// defaults follow the experiment parameter table; camera defaults are
/// desk-scale placeholders.
struct RunConfig {
    // camera
    double fx = 280.0, fy = 280.0, cx = 160.0, cy = 120.0;
    int width = 320, height = 240;
    std::array<double, 6> camera_pose{0, 0, 0, 250.0, 0, 0};  // rot xyz, position xyz

    // body
    double fixed_trans_x = 0.0;
    double fixed_trans_z = 0.0;
    JointLimits limits = JointLimits::defaults();

    // tracking
    TrackerConfig tracker;
    PostureParams track_reference;

    // segmentation
    double sigma_floor = kDefaultSigmaFloor;

    // offline size initialization
    std::size_t init_hypotheses = 50;
    double init_sigma_alpha = 5.0;
    unsigned init_max_iterations = 50;
    double init_rel_improvement = 0.005;
    unsigned init_stall_iterations = 3;
    std::array<PostureParams, 3> init_ref_postures = default_reference_postures();

    // synthetic sequences
    TrajectorySpec synth;

    // IO
    InputKind input_kind = InputKind::Masks;
    std::filesystem::path sizes_file;
    std::filesystem::path background_model;
    std::filesystem::path keyframes_file;

    // resampler comparison
    std::size_t compare_runs = 20;

    CameraModel make_camera() const;
    /// sizes_file when set, canonical defaults otherwise.
    SizeParams body_sizes() const;
};

/// Parses and validates a RunConfig. When `require_tracker_block` is set
/// (the track and compare-resamplers commands), the per-stage tracker keys
/// must be present explicitly; a missing one raises ConfigError naming it.
RunConfig parse_run_config(const KeyValueConfig& kv, bool require_tracker_block);
RunConfig load_run_config(const std::filesystem::path& path, bool require_tracker_block);

}  // namespace cardbox

#endif  // CARDBOX_CONFIG_HPP_
