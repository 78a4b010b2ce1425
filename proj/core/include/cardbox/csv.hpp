#ifndef CARDBOX_CSV_HPP_
#define CARDBOX_CSV_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cardbox/body_model.hpp"
#include "cardbox/matching.hpp"

namespace cardbox {

/// Trajectory CSV, shared by estimates and synthetic ground truth:
/// header "frame,d1,...,d12,cost", one row per frame. Doubles are written
/// in shortest round-trip form, so identical values give identical bytes.
struct TrajectoryRow {
    std::uint64_t frame = 0;
    PostureParams posture;
    Cost cost = 0;
};

void save_trajectory_csv(std::span<const TrajectoryRow> rows, const std::filesystem::path& path);
std::vector<TrajectoryRow> load_trajectory_csv(const std::filesystem::path& path);

/// Joints CSV: header "frame,<joint>_x,<joint>_y,<joint>_z,..." over the
/// seven named joints.
void save_joints_csv(std::span<const JointPositions> joints, const std::filesystem::path& path);

/// Long-format statistics CSV "frame,metric,value"; aggregate rows use
/// frame = -1.
struct StatRow {
    long frame = -1;
    std::string metric;
    double value = 0.0;
};

void save_stats_csv(std::span<const StatRow> rows, const std::filesystem::path& path);

std::string format_double(double v);

}  // namespace cardbox

#endif  // CARDBOX_CSV_HPP_
