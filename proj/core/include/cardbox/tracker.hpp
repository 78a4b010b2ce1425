#ifndef CARDBOX_TRACKER_HPP_
#define CARDBOX_TRACKER_HPP_

#include <array>
#include <cstdint>
#include <memory>

#include "cardbox/body_model.hpp"
#include "cardbox/camera.hpp"
#include "cardbox/mask.hpp"
#include "cardbox/matching.hpp"
#include "cardbox/resampling.hpp"

namespace cardbox {

enum class ResamplerKind { Drs, Srs };

/// The three hierarchy stages and their posture sub-ranges:
/// torso d1..d4, left arm d5..d8, right arm d9..d12.
constexpr std::array<std::pair<std::size_t, std::size_t>, 3> kStageDofs{
    {{0, 4}, {4, 8}, {8, 12}}};

constexpr std::size_t kStageCount = 3;

/// Per-stage filter parameters. Defaults are the experiment values:
/// torso N=200 e=0.2 sigma_rot=0.1 sigma_trans=2 sigma_gamma=8000,
/// arms  N=200 e=0.4 sigma_rot=0.25 sigma_gamma=4000.
struct StageConfig {
    std::size_t particle_count = 200;
    double survival_rate = 0.2;
    double sigma_beta_rot = 0.1;     // radians
    double sigma_beta_trans = 2.0;   // cm; torso stage only
    double sigma_gamma = 8000.0;     // pixels
};

struct TrackerConfig {
    StageConfig torso{200, 0.2, 0.1, 2.0, 8000.0};
    StageConfig left_arm{200, 0.4, 0.25, 0.0, 4000.0};
    StageConfig right_arm{200, 0.4, 0.25, 0.0, 4000.0};
    ResamplerKind resampler = ResamplerKind::Drs;
    std::uint64_t seed = 1;
    JointLimits limits = JointLimits::defaults();
    unsigned cycles_per_frame = 1;
    unsigned threads = 1;

    const StageConfig& stage(std::size_t i) const {
        return i == 0 ? torso : (i == 1 ? left_arm : right_arm);
    }
    StageConfig& stage(std::size_t i) { return i == 0 ? torso : (i == 1 ? left_arm : right_arm); }
};

/// Filter state across frames: one particle set per stage plus the current
/// best full-body estimate.
struct TrackState {
    std::array<ParticleSet, kStageCount> sets;
    PostureParams best;
    std::uint64_t frame_index = 0;
};

struct FrameEstimate {
    PostureParams posture;
    Cost cost = 0;
};

/// Three-stage hierarchical particle filter over silhouette costs. The
/// torso stage runs first with the arms rendered at the previous frame's
/// estimate; the two arm stages then run conditionally on the fresh torso
/// and are independent of each other, so their execution order (or
/// parallel execution) cannot change results. All randomness comes from
/// streams derived per (stage, cycle, slot), making runs reproducible for
/// any thread count.
class HierarchicalTracker {
public:
    HierarchicalTracker(const BodyModel& model, const CameraModel& cam, TrackerConfig config);

    /// Seeds every stage around the reference posture (slot 1 keeps the
    /// reference itself) and evaluates all costs against the first
    /// observation; estimation cycle k = 0.
    void init(const PostureParams& reference, const SilhouetteMask& first_observation);

    /// One tracking cycle: re-costs each stage's particles on the new
    /// observation, resamples, evaluates, and assembles the estimate from
    /// the per-stage lowest-cost particles.
    FrameEstimate track_frame(const SilhouetteMask& observed);

    /// Current assembled estimate costed against an observation (used for
    /// the initialization frame, which performs no resampling).
    FrameEstimate current_estimate(const SilhouetteMask& observed);

    bool initialized() const { return initialized_; }
    const TrackState& state() const { return state_; }
    const BodyModel& model() const { return *model_; }
    const CameraModel& camera() const { return cam_; }
    const TrackerConfig& config() const { return config_; }

private:
    DofNoise stage_noise(std::size_t stage) const;
    PostureParams compose(const PostureParams& base, std::size_t stage,
                          const std::vector<double>& params) const;
    void evaluate_costs(ParticleSet& set, std::size_t stage, const PostureParams& base,
                        const SilhouetteMask& observed);
    void resample_stage(ParticleSet& set, std::size_t stage);

    const BodyModel* model_;
    CameraModel cam_;
    TrackerConfig config_;
    TrackState state_;
    bool initialized_ = false;
    std::vector<std::unique_ptr<CostEvaluator>> evaluators_;  // one per worker
};

/// Offline body-size initialization: searches the three size subsets in
/// order (front view, side view, arms), each by repeated best-of-M
/// hypothesis refinement with Gaussian spread sigma_alpha around the
/// running best, against the matching reference posture and silhouette.
struct InitConfig {
    std::size_t hypothesis_count = 50;  // M
    double sigma_alpha = 5.0;           // cm
    std::array<PostureParams, 3> ref_postures;
    std::array<SilhouetteMask, 3> ref_masks;
    double rel_improvement = 0.005;  // stop when best cost improves less...
    unsigned stall_iterations = 3;   // ...for this many consecutive iterations
    unsigned max_iterations = 50;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

/// Hypothesis sizes are clamped to at least this length (cm).
constexpr double kMinSize = 1.0;

SizeParams estimate_sizes(const InitConfig& cfg, const SizeParams& initial_guess,
                          const CameraModel& cam, double fixed_trans_x, double fixed_trans_z,
                          const JointLimits& limits = JointLimits::defaults());

/// Default reference postures for the three initialization steps: facing
/// the camera, turned 90 degrees, and facing with arms raised sideways.
std::array<PostureParams, 3> default_reference_postures();

}  // namespace cardbox

#endif  // CARDBOX_TRACKER_HPP_
