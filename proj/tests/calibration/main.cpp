// Calibration runs behind tests/fixtures/calibrated.hpp.
//
// Prints the observed values for every fixture threshold:
//   - per-frame output cost of slow wave-hands tracking (DRS, 600
//     particles, 320x240) over several seeds
//   - final-frame per-joint 3D error of the same runs
//   - offline size initialization residual with a +4 cm initial guess
//   - cost of single-elbow perturbations away from a self-match
//
// Rerun with `cardbox_calibrate` after any change to the model, rasterizer
// or tracker, and refresh the header if the printed suggestions moved.

#include <algorithm>
#include <cstdio>
#include <vector>

#include "cardbox/eval.hpp"
#include "cardbox/matching.hpp"
#include "cardbox/raster.hpp"
#include "cardbox/synth.hpp"
#include "cardbox/tracker.hpp"

using namespace cardbox;

namespace {

CameraModel experiment_camera() {
    return CameraModel::facing_origin(280.0, 280.0, 160.0, 120.0, 320, 240, 250.0);
}

TrajectorySpec slow_wave(std::uint64_t seed) {
    TrajectorySpec spec;
    spec.kind = MotionKind::WaveHands;
    spec.frame_count = 30;
    spec.amplitude = 0.5;
    spec.max_step = 3.0 * 0.017453292519943295;
    spec.seed = seed;
    return spec;
}

}  // namespace

int main() {
    const SizeParams sizes = SizeParams::canonical();
    const CameraModel cam = experiment_camera();
    const BodyModel model = build_model(sizes, 0.0, 0.0);

    std::printf("== slow wave-hands tracking (DRS, 600 particles) ==\n");
    Cost worst_frame_cost = 0;
    std::array<double, JointPositions::kCount> worst_joint_err{};
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const SyntheticSequence seq = generate_sequence(slow_wave(seed), sizes, cam, 0, 0);
        TrackerConfig cfg;
        cfg.seed = seed;
        cfg.threads = 2;
        HierarchicalTracker tracker(model, cam, cfg);
        tracker.init(seq.postures[0], seq.masks[0]);

        Cost run_max = 0;
        std::vector<PostureParams> estimates{seq.postures[0]};
        for (std::size_t f = 1; f < seq.masks.size(); ++f) {
            const FrameEstimate est = tracker.track_frame(seq.masks[f]);
            run_max = std::max(run_max, est.cost);
            estimates.push_back(est.posture);
        }
        const auto est_joints = joints_of_trajectory(model, estimates);
        const auto gt_joints = joints_of_trajectory(model, seq.postures);
        std::printf("seed %llu: max frame cost %llu px; final-frame joint errors (cm):",
                    static_cast<unsigned long long>(seed),
                    static_cast<unsigned long long>(run_max));
        for (std::size_t j = 0; j < JointPositions::kCount; ++j) {
            const double err = norm(est_joints.back().by_index(j) - gt_joints.back().by_index(j));
            worst_joint_err[j] = std::max(worst_joint_err[j], err);
            std::printf(" %s=%.2f", JointPositions::names()[j], err);
        }
        std::printf("\n");
        worst_frame_cost = std::max(worst_frame_cost, run_max);
    }
    std::printf("worst per-frame cost: %llu px -> suggest threshold %llu px (x1.5)\n",
                static_cast<unsigned long long>(worst_frame_cost),
                static_cast<unsigned long long>(worst_frame_cost * 3 / 2));
    std::printf("worst final-frame joint errors (cm), suggest x1.5:\n");
    for (std::size_t j = 0; j < JointPositions::kCount; ++j)
        std::printf("  %-10s %.2f -> %.1f\n", JointPositions::names()[j], worst_joint_err[j],
                    worst_joint_err[j] * 1.5);

    std::printf("\n== offline size initialization, +4 cm offset, M=50 ==\n");
    InitConfig init;
    init.hypothesis_count = 50;
    init.ref_postures = default_reference_postures();
    for (int j = 0; j < 3; ++j)
        init.ref_masks[j] =
            rasterize(cam, forward_kinematics(model, init.ref_postures[j]).patches);
    init.threads = 2;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        init.seed = seed;
        SizeParams guess = sizes;
        for (double& a : guess.a) a += 4.0;
        const SizeParams estimated = estimate_sizes(init, guess, cam, 0.0, 0.0);
        const BodyModel est_model = build_model(estimated, 0.0, 0.0);
        Cost total = 0;
        for (int j = 0; j < 3; ++j)
            total += cost_of_posture(est_model, init.ref_postures[j], cam, init.ref_masks[j]);
        const double pct = 100.0 * static_cast<double>(total) /
                           (3.0 * cam.width() * cam.height());
        std::printf("seed %llu: summed self-match cost %llu px (%.3f%% of pixels/view)\n",
                    static_cast<unsigned long long>(seed),
                    static_cast<unsigned long long>(total), pct);
    }

    std::printf("\n== single-elbow perturbation sweep from a self-match ==\n");
    const SilhouetteMask observed =
        rasterize(cam, forward_kinematics(model, PostureParams{}).patches);
    for (std::size_t dof : {static_cast<std::size_t>(kLElbowFlex),
                            static_cast<std::size_t>(kLElbowSwing)}) {
        std::printf("dof %zu:", dof);
        for (double delta = 0.1; delta <= 1.5001; delta += 0.1) {
            PostureParams p;
            p[dof] = delta;
            std::printf(" %.1f:%llu", delta,
                        static_cast<unsigned long long>(cost_of_posture(model, p, cam, observed)));
        }
        std::printf("\n");
    }
    return 0;
}
