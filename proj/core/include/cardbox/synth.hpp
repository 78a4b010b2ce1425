#ifndef CARDBOX_SYNTH_HPP_
#define CARDBOX_SYNTH_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "cardbox/body_model.hpp"
#include "cardbox/camera.hpp"
#include "cardbox/mask.hpp"

namespace cardbox {

enum class MotionKind { WaveHands, BendAside, BowForward, Keyframes };

/// Parameterized trajectory generator: sinusoidal joint profiles for the
/// three named motions, linear interpolation for scripted keyframes. The
/// per-frame step of every DOF stays below max_step; the sinusoid period is
/// derived from amplitude and max_step.
struct TrajectorySpec {
    MotionKind kind = MotionKind::WaveHands;
    std::size_t frame_count = 30;
    double amplitude = 0.5;                 // radians, peak joint deviation
    double max_step = 3.0 * 0.017453292519943295;  // rad/frame (3 degrees)
    std::uint64_t seed = 1;
    std::vector<std::pair<std::size_t, PostureParams>> keyframes;  // Keyframes only
};

struct SyntheticSequence {
    std::vector<PostureParams> postures;  // ground truth, one per frame
    std::vector<SilhouetteMask> masks;    // rendered silhouettes
    bool clamped = false;                 // true if any DOF hit a joint limit
};

/// Generates the ground-truth postures and their rendered silhouettes.
/// Postures that would violate joint limits are clamped and flagged.
SyntheticSequence generate_sequence(const TrajectorySpec& spec, const SizeParams& sizes,
                                    const CameraModel& cam, double fixed_trans_x,
                                    double fixed_trans_z,
                                    const JointLimits& limits = JointLimits::defaults());

MotionKind parse_motion_kind(const std::string& name);
const char* motion_kind_name(MotionKind kind);

}  // namespace cardbox

#endif  // CARDBOX_SYNTH_HPP_
