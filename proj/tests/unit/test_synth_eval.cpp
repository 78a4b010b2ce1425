#include <cmath>

#include "cardbox/eval.hpp"
#include "cardbox/raster.hpp"
#include "cardbox/rng.hpp"
#include "cardbox/synth.hpp"
#include "cardbox/tracker.hpp"
#include "doctest.h"

using namespace cardbox;

namespace {

CameraModel small_camera() {
    return CameraModel::facing_origin(90.0, 90.0, 52.0, 40.0, 104, 80, 250.0);
}

}  // namespace

TEST_CASE("single zero-velocity frame reproduces the rest pose") {
    const CameraModel cam = small_camera();
    const SizeParams sizes = SizeParams::canonical();
    TrajectorySpec spec;
    spec.kind = MotionKind::WaveHands;
    spec.frame_count = 1;
    spec.amplitude = 0.0;
    const SyntheticSequence seq = generate_sequence(spec, sizes, cam, 0, 0);
    REQUIRE(seq.postures.size() == 1);
    for (std::size_t d = 0; d < kPostureDof; ++d) CHECK(seq.postures[0][d] == 0.0);

    const BodyModel model = build_model(sizes, 0, 0);
    const SilhouetteMask expected =
        rasterize(cam, forward_kinematics(model, PostureParams{}).patches);
    CHECK(seq.masks[0] == expected);
}

TEST_CASE("every generated mask equals the rendering of its saved posture") {
    const CameraModel cam = small_camera();
    const SizeParams sizes = SizeParams::canonical();
    const BodyModel model = build_model(sizes, 0, 0);
    for (MotionKind kind :
         {MotionKind::WaveHands, MotionKind::BendAside, MotionKind::BowForward}) {
        TrajectorySpec spec;
        spec.kind = kind;
        spec.frame_count = 6;
        spec.seed = 17;
        const SyntheticSequence seq = generate_sequence(spec, sizes, cam, 0, 0);
        for (std::size_t f = 0; f < seq.postures.size(); ++f) {
            const SilhouetteMask expected =
                rasterize(cam, forward_kinematics(model, seq.postures[f]).patches);
            CHECK(seq.masks[f] == expected);
        }
    }
}

TEST_CASE("wave-hands moves only arm DOF and starts at the reference pose") {
    const SyntheticSequence seq = generate_sequence({MotionKind::WaveHands, 20, 0.5, 0.06, 3, {}},
                                                    SizeParams::canonical(), small_camera(), 0, 0);
    for (std::size_t d = 0; d < 4; ++d)
        for (const PostureParams& p : seq.postures) CHECK(p[d] == 0.0);  // torso constant
    for (std::size_t d = 0; d < kPostureDof; ++d) CHECK(seq.postures[0][d] == 0.0);
    bool arms_moved = false;
    for (const PostureParams& p : seq.postures)
        if (p[kLShoulderAbd] != 0.0 || p[kLElbowSwing] != 0.0) arms_moved = true;
    CHECK(arms_moved);
}

TEST_CASE("per-frame steps respect the velocity bound") {
    for (MotionKind kind :
         {MotionKind::WaveHands, MotionKind::BendAside, MotionKind::BowForward}) {
        TrajectorySpec spec;
        spec.kind = kind;
        spec.frame_count = 40;
        spec.amplitude = 0.6;
        spec.max_step = 0.05;
        spec.seed = 9;
        const SyntheticSequence seq =
            generate_sequence(spec, SizeParams::canonical(), small_camera(), 0, 0);
        for (std::size_t f = 1; f < seq.postures.size(); ++f)
            for (std::size_t d = 0; d < kPostureDof; ++d)
                CHECK(std::abs(seq.postures[f][d] - seq.postures[f - 1][d]) <=
                      spec.max_step + 1e-9);
    }
}

TEST_CASE("keyframe trajectories interpolate linearly and clamp at limits") {
    PostureParams a;
    PostureParams b;
    b[kLShoulderAbd] = 1.0;
    b[kTorsoRotZ] = 9.0;  // beyond the default yaw limit, must clamp
    TrajectorySpec spec;
    spec.kind = MotionKind::Keyframes;
    spec.frame_count = 5;
    spec.keyframes = {{0, a}, {4, b}};
    const SyntheticSequence seq =
        generate_sequence(spec, SizeParams::canonical(), small_camera(), 0, 0);
    CHECK(seq.clamped);
    CHECK(seq.postures[2][kLShoulderAbd] == doctest::Approx(0.5));
    CHECK(seq.postures[4][kTorsoRotZ] == doctest::Approx(JointLimits::defaults().hi[kTorsoRotZ]));
}

TEST_CASE("identical trajectories have zero 3D error") {
    const BodyModel model = build_model(SizeParams::canonical(), 0, 0);
    std::vector<PostureParams> postures(5);
    postures[2][kLShoulderAbd] = 0.4;
    const auto joints = joints_of_trajectory(model, postures);
    const JointErrors err = eval_3d_error(joints, joints);
    for (double v : err.mean_cm) CHECK(v == 0.0);
}

TEST_CASE("a rigid 3 cm shift yields exactly 3 cm error per joint") {
    const BodyModel model = build_model(SizeParams::canonical(), 0, 0);
    std::vector<PostureParams> gt(4);
    std::vector<PostureParams> est = gt;
    for (PostureParams& p : est) p[kTorsoTransY] += 3.0;
    const JointErrors err =
        eval_3d_error(joints_of_trajectory(model, est), joints_of_trajectory(model, gt));
    for (double v : err.mean_cm) CHECK(v == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("3D error matches a direct distance average") {
    const BodyModel model = build_model(SizeParams::canonical(), 0, 0);
    RngStream rng(60);
    std::vector<PostureParams> gt, est;
    for (int f = 0; f < 12; ++f) {
        PostureParams a, b;
        for (std::size_t d = 4; d < kPostureDof; ++d) {
            a[d] = (rng.uniform() - 0.5) * 1.2;
            b[d] = (rng.uniform() - 0.5) * 1.2;
        }
        gt.push_back(a);
        est.push_back(b);
    }
    const auto gj = joints_of_trajectory(model, gt);
    const auto ej = joints_of_trajectory(model, est);
    const JointErrors err = eval_3d_error(ej, gj);
    for (std::size_t j = 0; j < JointPositions::kCount; ++j) {
        double sum = 0.0;
        for (std::size_t f = 0; f < gj.size(); ++f)
            sum += norm(ej[f].by_index(j) - gj[f].by_index(j));
        CHECK(std::abs(err.mean_cm[j] - sum / static_cast<double>(gj.size())) < 1e-9);
    }
}

TEST_CASE("3D error rejects mismatched lengths") {
    const BodyModel model = build_model(SizeParams::canonical(), 0, 0);
    std::vector<PostureParams> a(3), b(4);
    CHECK_THROWS_AS(
        eval_3d_error(joints_of_trajectory(model, a), joints_of_trajectory(model, b)),
        std::invalid_argument);
}

TEST_CASE("identical runs have zero spread") {
    RunTrajectory run;
    run.postures.assign(6, PostureParams{});
    run.costs.assign(6, 123);
    std::vector<RunTrajectory> runs(5, run);
    const RunStatistics stats = reproducibility(runs);
    CHECK(stats.run_count == 5);
    CHECK(stats.frame_count == 6);
    CHECK(stats.mean_dof_std() == 0.0);
    for (double v : stats.cost_std) CHECK(v == 0.0);
    CHECK(stats.mean_cost() == doctest::Approx(123.0));
}

TEST_CASE("two runs offset by +/-c in one DOF give spread c there only") {
    RunTrajectory lo, hi;
    lo.postures.assign(4, PostureParams{});
    hi.postures.assign(4, PostureParams{});
    lo.costs.assign(4, 0);
    hi.costs.assign(4, 0);
    lo.postures[2][kRElbowFlex] = -0.125;
    hi.postures[2][kRElbowFlex] = 0.125;
    std::vector<RunTrajectory> runs{lo, hi};
    const RunStatistics stats = reproducibility(runs);
    for (std::size_t f = 0; f < 4; ++f)
        for (std::size_t d = 0; d < kPostureDof; ++d) {
            if (f == 2 && d == kRElbowFlex)
                CHECK(stats.dof_std[f][d] == doctest::Approx(0.125));
            else
                CHECK(stats.dof_std[f][d] == 0.0);
        }
    CHECK(stats.dof_mean[2][kRElbowFlex] == doctest::Approx(0.0));
}

TEST_CASE("run statistics match direct formulas on random stacks") {
    RngStream rng(71);
    std::vector<RunTrajectory> runs(7);
    const std::size_t frames = 5;
    for (RunTrajectory& run : runs) {
        for (std::size_t f = 0; f < frames; ++f) {
            PostureParams p;
            for (std::size_t d = 0; d < kPostureDof; ++d) p[d] = rng.uniform() * 2.0 - 1.0;
            run.postures.push_back(p);
            run.costs.push_back(rng.next_u64() % 1000);
        }
    }
    const RunStatistics stats = reproducibility(runs);
    for (std::size_t f = 0; f < frames; ++f) {
        for (std::size_t d = 0; d < kPostureDof; ++d) {
            double sum = 0.0;
            for (const RunTrajectory& run : runs) sum += run.postures[f][d];
            const double mean = sum / 7.0;
            double var = 0.0;
            for (const RunTrajectory& run : runs) {
                const double diff = run.postures[f][d] - mean;
                var += diff * diff;
            }
            CHECK(std::abs(stats.dof_mean[f][d] - mean) < 1e-12);
            CHECK(std::abs(stats.dof_std[f][d] - std::sqrt(var / 7.0)) < 1e-12);
        }
    }
}

TEST_CASE("reproducibility rejects degenerate input") {
    std::vector<RunTrajectory> one(1);
    one[0].postures.assign(3, PostureParams{});
    one[0].costs.assign(3, 0);
    CHECK_THROWS_AS(reproducibility(one), std::invalid_argument);

    std::vector<RunTrajectory> ragged(2);
    ragged[0].postures.assign(3, PostureParams{});
    ragged[0].costs.assign(3, 0);
    ragged[1].postures.assign(2, PostureParams{});
    ragged[1].costs.assign(2, 0);
    CHECK_THROWS_AS(reproducibility(ragged), std::invalid_argument);
}

TEST_CASE("tracking a synthetic sequence beats a frozen estimator") {
    const CameraModel cam = small_camera();
    const SizeParams sizes = SizeParams::canonical();
    const BodyModel model = build_model(sizes, 0, 0);
    const SyntheticSequence seq =
        generate_sequence({MotionKind::WaveHands, 12, 0.5, 0.06, 21, {}}, sizes, cam, 0, 0);

    TrackerConfig cfg;
    cfg.torso.particle_count = 80;
    cfg.left_arm.particle_count = 80;
    cfg.right_arm.particle_count = 80;
    cfg.seed = 6;
    HierarchicalTracker tracker(model, cam, cfg);
    tracker.init(seq.postures[0], seq.masks[0]);

    double tracked_total = 0.0;
    double frozen_total = 0.0;
    CostEvaluator frozen_eval(model, cam);
    for (std::size_t f = 1; f < seq.masks.size(); ++f) {
        tracked_total += static_cast<double>(tracker.track_frame(seq.masks[f]).cost);
        frozen_total += static_cast<double>(frozen_eval(seq.postures[0], seq.masks[f]));
    }
    CHECK(tracked_total < frozen_total);
}
