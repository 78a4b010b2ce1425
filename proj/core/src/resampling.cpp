#include "cardbox/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cardbox {

namespace {

Particle perturbed(const Particle& ancestor, const DofNoise& noise, RngStream& rng) {
    Particle child;
    child.params.resize(ancestor.params.size());
    for (std::size_t d = 0; d < ancestor.params.size(); ++d) {
        const double v = ancestor.params[d] + noise.sigma[d] * rng.gaussian();
        child.params[d] = std::clamp(v, noise.lo[d], noise.hi[d]);
    }
    return child;
}

void check_noise(const DofNoise& noise, std::size_t dof) {
    if (noise.sigma.size() != dof || noise.lo.size() != dof || noise.hi.size() != dof)
        throw std::invalid_argument("noise spec does not match particle dimensionality");
}

}  // namespace

std::size_t argmin_cost_index(const ParticleSet& set) {
    if (set.particles.empty()) throw std::invalid_argument("empty particle set");
    std::size_t best = 0;
    for (std::size_t i = 1; i < set.particles.size(); ++i)
        if (set.particles[i].cost < set.particles[best].cost) best = i;
    return best;
}

double particle_probability(Cost cost, double sigma_gamma) {
    if (!(sigma_gamma > 0.0)) throw std::invalid_argument("sigma_gamma must be positive");
    const double w = static_cast<double>(cost);
    return std::exp(-(w * w) / (2.0 * sigma_gamma * sigma_gamma));
}

void assign_probabilities(ParticleSet& set, double sigma_gamma) {
    for (Particle& p : set.particles) p.prob = particle_probability(p.cost, sigma_gamma);
}

bool normalize_and_accumulate(ParticleSet& set) {
    double total = 0.0;
    for (const Particle& p : set.particles) total += p.prob;
    if (total <= 0.0) return false;
    set.cumulative.resize(set.particles.size());
    double running = 0.0;
    for (std::size_t i = 0; i < set.particles.size(); ++i) {
        set.particles[i].weight = set.particles[i].prob / total;
        running += set.particles[i].weight;
        set.cumulative[i] = running;
    }
    return true;
}

void uniform_weights(ParticleSet& set) {
    const double w = 1.0 / static_cast<double>(set.particles.size());
    set.cumulative.resize(set.particles.size());
    double running = 0.0;
    for (std::size_t i = 0; i < set.particles.size(); ++i) {
        set.particles[i].weight = w;
        running += w;
        set.cumulative[i] = running;
    }
}

ParticleSet srs_step(const ParticleSet& set, const DofNoise& noise, std::uint64_t root_seed,
                     std::uint64_t stage_id) {
    const std::size_t n = set.particles.size();
    if (n < 2) throw std::invalid_argument("need at least 2 particles");
    if (set.cumulative.size() != n)
        throw std::invalid_argument("weights not normalized and accumulated");
    check_noise(noise, set.particles[0].params.size());

    ParticleSet out;
    out.cycle = set.cycle + 1;
    out.particles.resize(n);
    out.particles[0].params = set.particles[argmin_cost_index(set)].params;

    const double strata = static_cast<double>(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        RngStream rng(derive_seed(root_seed, {stage_id, out.cycle, i}));
        const double r = (rng.uniform() + static_cast<double>(i - 1)) / strata;
        auto it = std::lower_bound(set.cumulative.begin(), set.cumulative.end(), r);
        const std::size_t ancestor =
            it == set.cumulative.end() ? n - 1
                                       : static_cast<std::size_t>(it - set.cumulative.begin());
        out.particles[i] = perturbed(set.particles[ancestor], noise, rng);
    }
    return out;
}

std::size_t drs_survivor_count(double survival_rate, std::size_t n) {
    return static_cast<std::size_t>(
        std::floor(survival_rate * static_cast<double>(n) + 1e-9));
}

ParticleSet drs_step(const ParticleSet& set, double survival_rate, const DofNoise& noise,
                     std::uint64_t root_seed, std::uint64_t stage_id) {
    const std::size_t n = set.particles.size();
    if (n < 2) throw std::invalid_argument("need at least 2 particles");
    if (!(survival_rate > 0.0) || survival_rate > 1.0)
        throw std::invalid_argument("survival rate must be in (0, 1]");
    const std::size_t n_survive = drs_survivor_count(survival_rate, n);
    if (n_survive < 1) throw std::invalid_argument("survival rate keeps no particle");
    check_noise(noise, set.particles[0].params.size());

    std::vector<std::size_t> ranked(n);
    std::iota(ranked.begin(), ranked.end(), 0);
    std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
        return set.particles[a].cost < set.particles[b].cost;
    });

    ParticleSet out;
    out.cycle = set.cycle + 1;
    out.particles.resize(n);
    out.particles[0].params = set.particles[ranked[0]].params;
    for (std::size_t i = 1; i < n; ++i) {
        RngStream rng(derive_seed(root_seed, {stage_id, out.cycle, i}));
        const Particle& ancestor =
            i < n_survive ? set.particles[ranked[i]] : set.particles[ranked[0]];
        out.particles[i] = perturbed(ancestor, noise, rng);
    }
    return out;
}

}  // namespace cardbox
