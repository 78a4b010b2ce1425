#ifndef CARDBOX_BODY_MODEL_HPP_
#define CARDBOX_BODY_MODEL_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "cardbox/geometry.hpp"

namespace cardbox {

/// Indices into the 12-entry posture vector d1..d12.
///
/// d1..d3  torso orientation, intrinsic Z-Y-X (yaw about vertical Z, then
///         pitch about lateral Y, then roll about depth X), radians
/// d4      torso translation along world Y, cm (the X and Z translations
///         are model constants fixed at initialization)
/// d5,d6   left shoulder: flexion about local Y, abduction about local X
/// d7,d8   left elbow: flexion, swing (same local-axis pattern)
/// d9,d10  right shoulder
/// d11,d12 right elbow
enum PostureIndex : std::size_t {
    kTorsoRotZ = 0,
    kTorsoRotY = 1,
    kTorsoRotX = 2,
    kTorsoTransY = 3,
    kLShoulderFlex = 4,
    kLShoulderAbd = 5,
    kLElbowFlex = 6,
    kLElbowSwing = 7,
    kRShoulderFlex = 8,
    kRShoulderAbd = 9,
    kRElbowFlex = 10,
    kRElbowSwing = 11,
};

constexpr std::size_t kPostureDof = 12;

/// The 12-DOF posture vector. Zero is the reference pose: subject upright
/// at the world origin, facing the camera, arms hanging down.
struct PostureParams {
    std::array<double, kPostureDof> d{};

    double operator[](std::size_t i) const { return d[i]; }
    double& operator[](std::size_t i) { return d[i]; }
};

/// Indices into the 18-entry body size vector a1..a18 (all cm).
///
/// Front-view subset a1..a8: torso width at the shoulders / at the waist
/// line, torso height, waist width and height, head width and height,
/// lateral shoulder-joint offset from the body midline.
/// Side-view subset a9..a12: torso, waist and head depths, neck length
/// (vertical gap between torso top and head bottom).
/// Arm subset a13..a18 (both arms identical): upper-arm length and width,
/// forearm length and width, hand length and width.
enum SizeIndex : std::size_t {
    kTorsoWidthTop = 0,
    kTorsoWidthBottom = 1,
    kTorsoHeight = 2,
    kWaistWidth = 3,
    kWaistHeight = 4,
    kHeadWidth = 5,
    kHeadHeight = 6,
    kShoulderOffset = 7,
    kTorsoDepth = 8,
    kWaistDepth = 9,
    kHeadDepth = 10,
    kNeckLength = 11,
    kUpperArmLength = 12,
    kUpperArmWidth = 13,
    kForearmLength = 14,
    kForearmWidth = 15,
    kHandLength = 16,
    kHandWidth = 17,
};

constexpr std::size_t kSizeCount = 18;

/// Boundaries of the three hierarchically estimated size subsets:
/// [0,8) front view, [8,12) side view, [12,18) arms.
constexpr std::array<std::pair<std::size_t, std::size_t>, 3> kSizeSubsets{
    {{0, 8}, {8, 12}, {12, 18}}};

struct SizeParams {
    std::array<double, kSizeCount> a{};

    double operator[](std::size_t i) const { return a[i]; }
    double& operator[](std::size_t i) { return a[i]; }

    /// Plausible adult defaults used by the synthetic harness.
    static SizeParams canonical();
};

/// Per-DOF closed intervals. Out-of-interval postures are rejected by
/// forward kinematics; samplers clamp to these bounds.
struct JointLimits {
    std::array<double, kPostureDof> lo{};
    std::array<double, kPostureDof> hi{};

    /// Torso yaw ±pi, every other angle ±pi/2, translation unbounded.
    static JointLimits defaults();

    bool contains(const PostureParams& p) const;
    double clamp_dof(std::size_t i, double value) const;
};

/// Body segments carrying patches. Waist and head are rigid with the torso
/// but keep their own origins.
enum class Segment : std::size_t {
    Torso = 0,
    Waist,
    Head,
    LUpperArm,
    LForearm,
    LHand,
    RUpperArm,
    RForearm,
    RHand,
};

constexpr std::size_t kSegmentCount = 9;

/// One planar quad in segment-local coordinates.
struct BodyPatch {
    Segment segment;
    std::array<Vec3, 4> corners;
};

/// 3D cardbox body: every part is represented by two or three mutually
/// perpendicular planar patches bound to a kinematic tree (torso root;
/// waist and head rigid; shoulder -> elbow -> hand chains per arm). The
/// torso carries three patches (frontal, sagittal, transverse at the
/// shoulder line), all other parts two.
class BodyModel {
public:
    const SizeParams& sizes() const { return sizes_; }
    double fixed_trans_x() const { return fixed_trans_x_; }
    double fixed_trans_z() const { return fixed_trans_z_; }
    const JointLimits& limits() const { return limits_; }
    const std::vector<BodyPatch>& patches() const { return patches_; }

    /// Segment origins in the parent frame (arm segments: joint positions).
    Vec3 shoulder_offset(bool left) const;
    double upper_arm_length() const { return sizes_[kUpperArmLength]; }
    double forearm_length() const { return sizes_[kForearmLength]; }
    double hand_length() const { return sizes_[kHandLength]; }

private:
    friend BodyModel build_model(const SizeParams&, double, double, const JointLimits&);

    SizeParams sizes_;
    double fixed_trans_x_ = 0.0;
    double fixed_trans_z_ = 0.0;
    JointLimits limits_;
    std::vector<BodyPatch> patches_;
};

/// Named 3D joint positions in the world frame (cm).
struct JointPositions {
    Vec3 torso_center;
    Vec3 l_shoulder, l_elbow, l_hand;
    Vec3 r_shoulder, r_elbow, r_hand;

    static constexpr std::size_t kCount = 7;
    static const std::array<const char*, kCount>& names();
    Vec3 by_index(std::size_t i) const;
};

using PatchQuad = std::array<Vec3, 4>;

struct PosedBody {
    JointPositions joints;
    std::vector<PatchQuad> patches;
};

/// Builds the cardbox model. Throws std::invalid_argument if any size is
/// non-positive or non-finite.
BodyModel build_model(const SizeParams& sizes, double fixed_trans_x, double fixed_trans_z,
                      const JointLimits& limits = JointLimits::defaults());

/// Maps posture to world-frame joint positions and patch corners by
/// composing rigid transforms along the skeleton tree. Throws
/// std::invalid_argument on non-finite or out-of-limit postures.
PosedBody forward_kinematics(const BodyModel& model, const PostureParams& posture);

/// One line of 18 comma-separated cm values.
SizeParams parse_sizes_line(const std::string& line);
SizeParams load_sizes(const std::filesystem::path& path);
void save_sizes(const SizeParams& sizes, const std::filesystem::path& path);

/// One line of 12 comma-separated values (radians, d4 in cm).
PostureParams parse_posture_line(const std::string& line);
std::string format_posture_line(const PostureParams& posture);

}  // namespace cardbox

#endif  // CARDBOX_BODY_MODEL_HPP_
