#include "cardbox/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cardbox/parallel.hpp"
#include "cardbox/raster.hpp"

namespace cardbox {

namespace {

// Seed-derivation tags keeping initialization streams disjoint from the
// per-stage tracking streams 0..2.
constexpr std::uint64_t kSizeInitTag = 16;

unsigned worker_count(unsigned threads, std::size_t n) {
    if (threads <= 1) return 1;
    return static_cast<unsigned>(std::min<std::size_t>(threads, n));
}

}  // namespace

HierarchicalTracker::HierarchicalTracker(const BodyModel& model, const CameraModel& cam,
                                         TrackerConfig config)
    : model_(&model), cam_(cam), config_(std::move(config)) {
    for (std::size_t s = 0; s < kStageCount; ++s) {
        const StageConfig& sc = config_.stage(s);
        if (sc.particle_count < 2) throw std::invalid_argument("particle count must be >= 2");
        if (!(sc.sigma_gamma > 0.0)) throw std::invalid_argument("sigma_gamma must be positive");
        if (config_.resampler == ResamplerKind::Drs &&
            drs_survivor_count(sc.survival_rate, sc.particle_count) < 1)
            throw std::invalid_argument("survival rate keeps no particle");
    }
    if (config_.cycles_per_frame < 1)
        throw std::invalid_argument("cycles_per_frame must be >= 1");
    const unsigned workers = worker_count(config_.threads, 1'000'000);
    evaluators_.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        evaluators_.push_back(std::make_unique<CostEvaluator>(*model_, cam_));
}

DofNoise HierarchicalTracker::stage_noise(std::size_t stage) const {
    const auto [begin, end] = kStageDofs[stage];
    const StageConfig& sc = config_.stage(stage);
    DofNoise noise;
    for (std::size_t d = begin; d < end; ++d) {
        noise.sigma.push_back(d == kTorsoTransY ? sc.sigma_beta_trans : sc.sigma_beta_rot);
        noise.lo.push_back(config_.limits.lo[d]);
        noise.hi.push_back(config_.limits.hi[d]);
    }
    return noise;
}

PostureParams HierarchicalTracker::compose(const PostureParams& base, std::size_t stage,
                                           const std::vector<double>& params) const {
    PostureParams full = base;
    const auto [begin, end] = kStageDofs[stage];
    for (std::size_t d = begin; d < end; ++d) full[d] = params[d - begin];
    return full;
}

void HierarchicalTracker::evaluate_costs(ParticleSet& set, std::size_t stage,
                                         const PostureParams& base,
                                         const SilhouetteMask& observed) {
    const std::size_t n = set.particles.size();
    const unsigned workers =
        std::min<unsigned>(static_cast<unsigned>(evaluators_.size()), worker_count(config_.threads, n));
    parallel_chunks(n, workers, [&](unsigned worker, std::size_t begin, std::size_t end) {
        CostEvaluator& eval = *evaluators_[worker];
        for (std::size_t i = begin; i < end; ++i) {
            Particle& p = set.particles[i];
            p.cost = eval(compose(base, stage, p.params), observed);
        }
    });
}

void HierarchicalTracker::resample_stage(ParticleSet& set, std::size_t stage) {
    const StageConfig& sc = config_.stage(stage);
    const DofNoise noise = stage_noise(stage);
    if (config_.resampler == ResamplerKind::Srs) {
        assign_probabilities(set, sc.sigma_gamma);
        if (!normalize_and_accumulate(set)) uniform_weights(set);
        set = srs_step(set, noise, config_.seed, stage);
    } else {
        set = drs_step(set, sc.survival_rate, noise, config_.seed, stage);
    }
}

void HierarchicalTracker::init(const PostureParams& reference,
                               const SilhouetteMask& first_observation) {
    if (!model_->limits().contains(reference))
        throw std::invalid_argument("reference posture violates joint limits");
    if (first_observation.width() != cam_.width() || first_observation.height() != cam_.height())
        throw std::invalid_argument("observation size does not match camera");

    state_ = TrackState{};
    state_.best = reference;

    for (std::size_t stage = 0; stage < kStageCount; ++stage) {
        const auto [begin, end] = kStageDofs[stage];
        const StageConfig& sc = config_.stage(stage);
        const DofNoise noise = stage_noise(stage);

        ParticleSet set;
        set.cycle = 0;
        set.particles.resize(sc.particle_count);
        for (std::size_t i = 0; i < sc.particle_count; ++i) {
            Particle& p = set.particles[i];
            p.params.assign(reference.d.begin() + static_cast<std::ptrdiff_t>(begin),
                            reference.d.begin() + static_cast<std::ptrdiff_t>(end));
            if (i == 0) continue;  // slot 1 keeps the reference unperturbed
            RngStream rng(derive_seed(config_.seed, {stage, 0, i}));
            for (std::size_t d = 0; d < p.params.size(); ++d) {
                const double v = p.params[d] + noise.sigma[d] * rng.gaussian();
                p.params[d] = std::clamp(v, noise.lo[d], noise.hi[d]);
            }
        }
        evaluate_costs(set, stage, reference, first_observation);
        state_.sets[stage] = std::move(set);
    }
    // Cycle 0 estimate: the lowest-cost particle of each stage.
    for (std::size_t stage = 0; stage < kStageCount; ++stage) {
        const ParticleSet& set = state_.sets[stage];
        state_.best = compose(state_.best, stage,
                              set.particles[argmin_cost_index(set)].params);
    }
    state_.frame_index = 0;
    initialized_ = true;
}

FrameEstimate HierarchicalTracker::current_estimate(const SilhouetteMask& observed) {
    if (!initialized_) throw std::logic_error("tracker not initialized");
    FrameEstimate out;
    out.posture = state_.best;
    out.cost = (*evaluators_[0])(state_.best, observed);
    return out;
}

FrameEstimate HierarchicalTracker::track_frame(const SilhouetteMask& observed) {
    if (!initialized_) throw std::logic_error("tracker not initialized");
    if (observed.width() != cam_.width() || observed.height() != cam_.height())
        throw std::invalid_argument("observation size does not match camera");

    for (unsigned cycle = 0; cycle < config_.cycles_per_frame; ++cycle) {
        // Torso stage: arms frozen at the previous estimate. The carried
        // set (including the elite slot) is re-costed against the new
        // observation before ranking.
        PostureParams base = state_.best;
        {
            ParticleSet& set = state_.sets[0];
            evaluate_costs(set, 0, base, observed);
            resample_stage(set, 0);
            evaluate_costs(set, 0, base, observed);
            const std::size_t best = argmin_cost_index(set);
            base = compose(base, 0, set.particles[best].params);
        }
        // Arm stages: both conditioned on the fresh torso and on the
        // previous frame's opposite arm; mutually independent.
        PostureParams assembled = base;
        for (std::size_t stage = 1; stage < kStageCount; ++stage) {
            ParticleSet& set = state_.sets[stage];
            evaluate_costs(set, stage, base, observed);
            resample_stage(set, stage);
            evaluate_costs(set, stage, base, observed);
            const std::size_t best = argmin_cost_index(set);
            assembled = compose(assembled, stage, set.particles[best].params);
        }
        state_.best = assembled;
    }
    state_.frame_index += 1;

    FrameEstimate out;
    out.posture = state_.best;
    out.cost = (*evaluators_[0])(state_.best, observed);
    return out;
}

std::array<PostureParams, 3> default_reference_postures() {
    std::array<PostureParams, 3> refs;
    refs[1][kTorsoRotZ] = std::numbers::pi / 2.0;  // side view
    refs[2][kLShoulderAbd] = std::numbers::pi / 2.0;  // arms raised sideways
    refs[2][kRShoulderAbd] = -std::numbers::pi / 2.0;
    return refs;
}

SizeParams estimate_sizes(const InitConfig& cfg, const SizeParams& initial_guess,
                          const CameraModel& cam, double fixed_trans_x, double fixed_trans_z,
                          const JointLimits& limits) {
    if (cfg.hypothesis_count < 2) throw std::invalid_argument("need at least 2 hypotheses");
    if (!(cfg.sigma_alpha > 0.0)) throw std::invalid_argument("sigma_alpha must be positive");
    for (std::size_t j = 0; j < 3; ++j) {
        if (cfg.ref_masks[j].width() != cam.width() || cfg.ref_masks[j].height() != cam.height())
            throw std::invalid_argument("reference silhouette size does not match camera");
        if (!limits.contains(cfg.ref_postures[j]))
            throw std::invalid_argument("reference posture violates joint limits");
    }

    SizeParams current = initial_guess;
    for (double& v : current.a) v = std::max(v, kMinSize);

    const std::size_t m = cfg.hypothesis_count;
    const unsigned workers = worker_count(cfg.threads, m);

    for (std::size_t j = 0; j < 3; ++j) {
        const auto [begin, end] = kSizeSubsets[j];
        const std::size_t dims = end - begin;
        const PostureParams& posture = cfg.ref_postures[j];
        const SilhouetteMask& observed = cfg.ref_masks[j];

        std::vector<double> best(current.a.begin() + static_cast<std::ptrdiff_t>(begin),
                                 current.a.begin() + static_cast<std::ptrdiff_t>(end));
        auto cost_of_subset = [&](const std::vector<double>& subset) {
            SizeParams sized = current;
            std::copy(subset.begin(), subset.end(),
                      sized.a.begin() + static_cast<std::ptrdiff_t>(begin));
            const BodyModel model = build_model(sized, fixed_trans_x, fixed_trans_z, limits);
            return cost_of_posture(model, posture, cam, observed);
        };
        Cost best_cost = cost_of_subset(best);

        unsigned stall = 0;
        for (unsigned iter = 0; iter < cfg.max_iterations && stall < cfg.stall_iterations;
             ++iter) {
            std::vector<std::vector<double>> hypotheses(m);
            hypotheses[0] = best;  // elite hypothesis survives unperturbed
            for (std::size_t i = 1; i < m; ++i) {
                RngStream rng(derive_seed(cfg.seed, {kSizeInitTag + j, iter, i}));
                hypotheses[i].resize(dims);
                for (std::size_t d = 0; d < dims; ++d)
                    hypotheses[i][d] =
                        std::max(best[d] + cfg.sigma_alpha * rng.gaussian(), kMinSize);
            }

            std::vector<Cost> costs(m);
            parallel_chunks(m, workers, [&](unsigned, std::size_t lo, std::size_t hi) {
                for (std::size_t i = lo; i < hi; ++i) costs[i] = cost_of_subset(hypotheses[i]);
            });

            std::size_t best_idx = 0;
            for (std::size_t i = 1; i < m; ++i)
                if (costs[i] < costs[best_idx]) best_idx = i;

            const Cost new_cost = costs[best_idx];
            const double improvement =
                best_cost == 0 ? 0.0
                               : static_cast<double>(best_cost - new_cost) /
                                     static_cast<double>(best_cost);
            stall = improvement < cfg.rel_improvement ? stall + 1 : 0;
            best = hypotheses[best_idx];
            best_cost = new_cost;
        }
        std::copy(best.begin(), best.end(), current.a.begin() + static_cast<std::ptrdiff_t>(begin));
    }
    return current;
}

}  // namespace cardbox
