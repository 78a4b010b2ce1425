#ifndef CARDBOX_RESAMPLING_HPP_
#define CARDBOX_RESAMPLING_HPP_

#include <cstdint>
#include <vector>

#include "cardbox/matching.hpp"
#include "cardbox/rng.hpp"

namespace cardbox {

/// One posture hypothesis for a single hierarchy stage. `params` holds the
/// stage's sub-vector of the full posture; `prob`/`weight` are only
/// populated on the stratified path.
struct Particle {
    std::vector<double> params;
    Cost cost = 0;
    double prob = 0.0;
    double weight = 0.0;
};

/// Fixed-size particle population of one stage. `cycle` is the estimation
/// cycle index k; resampling increments it by exactly one.
struct ParticleSet {
    std::vector<Particle> particles;
    std::vector<double> cumulative;  // prefix sums of weights, stratified path
    std::uint64_t cycle = 0;
};

/// Per-DOF Gaussian perturbation scales with clamping bounds. Samples
/// falling outside [lo, hi] are clamped to the boundary.
struct DofNoise {
    std::vector<double> sigma;
    std::vector<double> lo;
    std::vector<double> hi;
};

/// Index of the lowest-cost particle; ties break to the lowest index.
std::size_t argmin_cost_index(const ParticleSet& set);

/// Cost-to-probability transform exp(-W^2 / (2 sigma_gamma^2)).
/// Throws std::invalid_argument if sigma_gamma <= 0.
double particle_probability(Cost cost, double sigma_gamma);

/// Fills every particle's prob from its cost.
void assign_probabilities(ParticleSet& set, double sigma_gamma);

/// Normalizes probabilities into weights and builds the cumulative prefix
/// sums. Returns false without touching the set when all probabilities are
/// zero (degenerate weights); callers fall back to uniform_weights().
bool normalize_and_accumulate(ParticleSet& set);

/// Uniform fallback: weight 1/N per particle plus cumulative sums.
void uniform_weights(ParticleSet& set);

/// Stratified resampling. Slot 1 is the previous lowest-cost particle
/// copied unperturbed; the remaining N-1 slots draw one uniform each from
/// the N-1 equal strata of [0,1), select the ancestor by cumulative weight
/// and perturb it. Costs of the returned set are stale until the caller
/// re-evaluates them. Throws std::invalid_argument if weights were not
/// normalized and accumulated.
ParticleSet srs_step(const ParticleSet& set, const DofNoise& noise, std::uint64_t root_seed,
                     std::uint64_t stage_id);

/// Deterministic resampling with survival rate e in (0, 1]. Particles are
/// ranked by cost (stable on the original index); slot 1 keeps the best
/// unperturbed, slots 2..floor(e*N) perturb the ranked survivors in order,
/// and the remaining slots redraw around the best. Costs are stale until
/// re-evaluated.
ParticleSet drs_step(const ParticleSet& set, double survival_rate, const DofNoise& noise,
                     std::uint64_t root_seed, std::uint64_t stage_id);

/// floor(e*N) with a tolerance so integral products stay exact.
std::size_t drs_survivor_count(double survival_rate, std::size_t n);

}  // namespace cardbox

#endif  // CARDBOX_RESAMPLING_HPP_
