#include "cardbox/eval.hpp"

#include <cmath>
#include <stdexcept>

namespace cardbox {

JointErrors eval_3d_error(std::span<const JointPositions> estimated,
                          std::span<const JointPositions> ground_truth) {
    if (estimated.size() != ground_truth.size())
        throw std::invalid_argument("trajectory length mismatch");
    if (estimated.empty()) throw std::invalid_argument("empty trajectories");

    JointErrors err;
    for (std::size_t f = 0; f < estimated.size(); ++f)
        for (std::size_t j = 0; j < JointPositions::kCount; ++j)
            err.mean_cm[j] += norm(estimated[f].by_index(j) - ground_truth[f].by_index(j));
    for (double& v : err.mean_cm) v /= static_cast<double>(estimated.size());
    return err;
}

std::vector<JointPositions> joints_of_trajectory(const BodyModel& model,
                                                 std::span<const PostureParams> postures) {
    std::vector<JointPositions> joints;
    joints.reserve(postures.size());
    for (const PostureParams& p : postures) joints.push_back(forward_kinematics(model, p).joints);
    return joints;
}

double RunStatistics::mean_dof_std() const {
    double total = 0.0;
    for (const auto& frame : dof_std)
        for (double v : frame) total += v;
    return total / (static_cast<double>(frame_count) * kPostureDof);
}

double RunStatistics::mean_cost() const {
    double total = 0.0;
    for (double v : cost_mean) total += v;
    return total / static_cast<double>(frame_count);
}

RunStatistics reproducibility(std::span<const RunTrajectory> runs) {
    if (runs.size() < 2) throw std::invalid_argument("need at least 2 runs");
    const std::size_t frames = runs[0].postures.size();
    if (frames == 0) throw std::invalid_argument("empty runs");
    for (const RunTrajectory& run : runs)
        if (run.postures.size() != frames || run.costs.size() != frames)
            throw std::invalid_argument("ragged run lengths");

    RunStatistics stats;
    stats.run_count = runs.size();
    stats.frame_count = frames;
    stats.dof_mean.assign(frames, {});
    stats.dof_std.assign(frames, {});
    stats.cost_mean.assign(frames, 0.0);
    stats.cost_std.assign(frames, 0.0);

    const double r = static_cast<double>(runs.size());
    for (std::size_t f = 0; f < frames; ++f) {
        for (std::size_t d = 0; d < kPostureDof; ++d) {
            double sum = 0.0, sum_sq = 0.0;
            for (const RunTrajectory& run : runs) {
                const double v = run.postures[f][d];
                sum += v;
                sum_sq += v * v;
            }
            const double mean = sum / r;
            stats.dof_mean[f][d] = mean;
            stats.dof_std[f][d] = std::sqrt(std::max(0.0, sum_sq / r - mean * mean));
        }
        double sum = 0.0, sum_sq = 0.0;
        for (const RunTrajectory& run : runs) {
            const double v = static_cast<double>(run.costs[f]);
            sum += v;
            sum_sq += v * v;
        }
        const double mean = sum / r;
        stats.cost_mean[f] = mean;
        stats.cost_std[f] = std::sqrt(std::max(0.0, sum_sq / r - mean * mean));
    }
    return stats;
}

}  // namespace cardbox
