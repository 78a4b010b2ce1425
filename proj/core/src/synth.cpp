#include "cardbox/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cardbox/errors.hpp"
#include "cardbox/raster.hpp"
#include "cardbox/rng.hpp"

namespace cardbox {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Period such that the steepest per-frame step of A*sin(2*pi*t/P) stays
// within max_step.
double period_for(double amplitude, double max_step) {
    return std::max(8.0, kTwoPi * amplitude / std::max(max_step, 1e-6));
}

// All named motions start exactly at the zero pose, so a sequence's first
// frame matches the default tracking reference.
PostureParams wave_hands_at(double t, double amplitude, double period) {
    PostureParams p;
    const double s = std::sin(kTwoPi * t / period);
    const double rise = 0.5 * (1.0 - std::cos(kTwoPi * t / period));
    p[kLShoulderAbd] = 0.6 * amplitude * s;
    p[kRShoulderAbd] = -0.6 * amplitude * s;
    p[kLElbowSwing] = amplitude * rise;
    p[kRElbowSwing] = -amplitude * rise;
    return p;
}

PostureParams bend_aside_at(double t, double amplitude, double period) {
    PostureParams p;
    const double rise = 0.5 * (1.0 - std::cos(kTwoPi * t / period));
    p[kTorsoRotX] = amplitude * std::sin(kTwoPi * t / period);
    // arms swing slightly out so they stay distinguishable from the torso
    p[kLShoulderAbd] = 0.35 * rise;
    p[kRShoulderAbd] = -0.35 * rise;
    return p;
}

PostureParams bow_forward_at(double t, double amplitude, double period) {
    PostureParams p;
    const double rise = 0.5 * (1.0 - std::cos(kTwoPi * t / period));
    p[kTorsoRotY] = amplitude * std::sin(kTwoPi * t / period);
    p[kLShoulderAbd] = 0.35 * rise;
    p[kRShoulderAbd] = -0.35 * rise;
    return p;
}

PostureParams keyframes_at(const std::vector<std::pair<std::size_t, PostureParams>>& keys,
                           std::size_t frame) {
    if (keys.empty()) throw DataError("keyframe trajectory needs at least one keyframe");
    if (frame <= keys.front().first) return keys.front().second;
    for (std::size_t i = 1; i < keys.size(); ++i) {
        if (frame <= keys[i].first) {
            const auto& [f0, p0] = keys[i - 1];
            const auto& [f1, p1] = keys[i];
            const double t = f1 == f0 ? 1.0
                                      : static_cast<double>(frame - f0) /
                                            static_cast<double>(f1 - f0);
            PostureParams p;
            for (std::size_t d = 0; d < kPostureDof; ++d)
                p[d] = p0[d] + t * (p1[d] - p0[d]);
            return p;
        }
    }
    return keys.back().second;
}

}  // namespace

SyntheticSequence generate_sequence(const TrajectorySpec& spec, const SizeParams& sizes,
                                    const CameraModel& cam, double fixed_trans_x,
                                    double fixed_trans_z, const JointLimits& limits) {
    if (spec.frame_count < 1) throw std::invalid_argument("frame count must be >= 1");
    if (!(spec.amplitude >= 0.0) || !std::isfinite(spec.amplitude) ||
        !std::isfinite(spec.max_step))
        throw std::invalid_argument("invalid trajectory amplitude or step bound");

    const BodyModel model = build_model(sizes, fixed_trans_x, fixed_trans_z, limits);
    // The seed stretches the period a little, giving distinct sequences per
    // seed while keeping the per-frame step bound.
    RngStream rng(derive_seed(spec.seed, {32}));
    const double period = period_for(spec.amplitude, spec.max_step) * (1.0 + 0.25 * rng.uniform());

    // Keyframes must be sorted by frame index.
    if (spec.kind == MotionKind::Keyframes) {
        for (std::size_t i = 1; i < spec.keyframes.size(); ++i)
            if (spec.keyframes[i].first <= spec.keyframes[i - 1].first)
                throw DataError("keyframes must have strictly increasing frame indices");
    }

    SyntheticSequence seq;
    seq.postures.reserve(spec.frame_count);
    seq.masks.reserve(spec.frame_count);
    for (std::size_t f = 0; f < spec.frame_count; ++f) {
        const double t = static_cast<double>(f);
        PostureParams p;
        switch (spec.kind) {
            case MotionKind::WaveHands: p = wave_hands_at(t, spec.amplitude, period); break;
            case MotionKind::BendAside: p = bend_aside_at(t, spec.amplitude, period); break;
            case MotionKind::BowForward: p = bow_forward_at(t, spec.amplitude, period); break;
            case MotionKind::Keyframes: p = keyframes_at(spec.keyframes, f); break;
        }
        for (std::size_t d = 0; d < kPostureDof; ++d) {
            const double clamped = limits.clamp_dof(d, p[d]);
            if (clamped != p[d]) seq.clamped = true;
            p[d] = clamped;
        }
        const PosedBody posed = forward_kinematics(model, p);
        seq.postures.push_back(p);
        seq.masks.push_back(rasterize(cam, posed.patches));
    }
    return seq;
}

MotionKind parse_motion_kind(const std::string& name) {
    if (name == "wave-hands") return MotionKind::WaveHands;
    if (name == "bend-aside") return MotionKind::BendAside;
    if (name == "bow-forward") return MotionKind::BowForward;
    if (name == "keyframes") return MotionKind::Keyframes;
    throw ConfigError("unknown motion kind: " + name);
}

const char* motion_kind_name(MotionKind kind) {
    switch (kind) {
        case MotionKind::WaveHands: return "wave-hands";
        case MotionKind::BendAside: return "bend-aside";
        case MotionKind::BowForward: return "bow-forward";
        case MotionKind::Keyframes: return "keyframes";
    }
    return "?";
}

}  // namespace cardbox
