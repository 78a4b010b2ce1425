#ifndef CARDBOX_EVAL_HPP_
#define CARDBOX_EVAL_HPP_

#include <array>
#include <span>
#include <vector>

#include "cardbox/body_model.hpp"
#include "cardbox/matching.hpp"

namespace cardbox {

/// Mean 3D distance per named joint (cm), averaged over frames.
struct JointErrors {
    std::array<double, JointPositions::kCount> mean_cm{};
};

/// Throws std::invalid_argument on length mismatch or empty input.
JointErrors eval_3d_error(std::span<const JointPositions> estimated,
                          std::span<const JointPositions> ground_truth);

/// Forward-kinematics conversion of a posture trajectory.
std::vector<JointPositions> joints_of_trajectory(const BodyModel& model,
                                                 std::span<const PostureParams> postures);

/// One tracking run: per-frame estimates and their full-body costs.
struct RunTrajectory {
    std::vector<PostureParams> postures;
    std::vector<Cost> costs;
};

/// Across-run statistics of repeated tracking: per-frame, per-DOF mean and
/// population standard deviation, plus per-frame cost mean/std.
struct RunStatistics {
    std::size_t run_count = 0;
    std::size_t frame_count = 0;
    std::vector<std::array<double, kPostureDof>> dof_mean;  // [frame][dof]
    std::vector<std::array<double, kPostureDof>> dof_std;
    std::vector<double> cost_mean;  // [frame]
    std::vector<double> cost_std;

    /// Per-DOF std averaged over frames and DOF (the reproducibility
    /// scalar used to compare resampling strategies).
    double mean_dof_std() const;
    double mean_cost() const;
};

/// Throws std::invalid_argument on fewer than 2 runs or ragged lengths.
RunStatistics reproducibility(std::span<const RunTrajectory> runs);

}  // namespace cardbox

#endif  // CARDBOX_EVAL_HPP_
