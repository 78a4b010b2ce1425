#include <cmath>
#include <map>

#include "cardbox/resampling.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cardbox;

namespace {

DofNoise unit_noise(std::size_t dof, double sigma = 0.1, double bound = 1e9) {
    DofNoise n;
    n.sigma.assign(dof, sigma);
    n.lo.assign(dof, -bound);
    n.hi.assign(dof, bound);
    return n;
}

ParticleSet set_with_costs(const std::vector<Cost>& costs) {
    ParticleSet set;
    for (std::size_t i = 0; i < costs.size(); ++i) {
        Particle p;
        p.params = {static_cast<double>(i), 0.0};
        p.cost = costs[i];
        set.particles.push_back(std::move(p));
    }
    return set;
}

}  // namespace

TEST_CASE("probability transform follows the squared-cost exponential") {
    CHECK(particle_probability(0, 50.0) == 1.0);
    CHECK(particle_probability(100, 100.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(particle_probability(100, 100.0) == doctest::Approx(0.606531).epsilon(1e-5));
    CHECK_THROWS_AS(particle_probability(1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(particle_probability(1, -4.0), std::invalid_argument);

    RngStream rng(10);
    for (int i = 0; i < 100; ++i) {
        const Cost w1 = rng.next_u64() % 5000;
        const Cost w2 = w1 + 1 + rng.next_u64() % 5000;
        CHECK(particle_probability(w1, 800.0) > particle_probability(w2, 800.0));
    }
}

TEST_CASE("equal costs normalize to uniform weights with linear cumulative") {
    ParticleSet set = set_with_costs({70, 70, 70, 70});
    assign_probabilities(set, 100.0);
    REQUIRE(normalize_and_accumulate(set));
    for (const Particle& p : set.particles) CHECK(p.weight == doctest::Approx(0.25));
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(set.cumulative[i] == doctest::Approx(0.25 * static_cast<double>(i + 1)));
    CHECK(set.cumulative.back() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("single surviving probability takes all the weight") {
    ParticleSet set = set_with_costs({5000, 0, 5000});
    for (std::size_t i = 0; i < 3; ++i) set.particles[i].prob = i == 1 ? 1.0 : 0.0;
    REQUIRE(normalize_and_accumulate(set));
    CHECK(set.particles[1].weight == 1.0);
    CHECK(set.cumulative[0] == 0.0);
    CHECK(set.cumulative[1] == 1.0);
    CHECK(set.cumulative[2] == 1.0);
}

TEST_CASE("all-zero probabilities signal degeneracy and callers fall back to uniform") {
    ParticleSet set = set_with_costs({10, 20, 30});
    for (Particle& p : set.particles) p.prob = 0.0;
    CHECK_FALSE(normalize_and_accumulate(set));
    uniform_weights(set);
    for (const Particle& p : set.particles) CHECK(p.weight == doctest::Approx(1.0 / 3.0));
    CHECK(set.cumulative.back() == doctest::Approx(1.0));
}

TEST_CASE("normalized prefix sums match the reference") {
    RngStream rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        ParticleSet set = set_with_costs(std::vector<Cost>(64, 0));
        std::vector<double> probs;
        for (Particle& p : set.particles) {
            p.prob = rng.uniform() + 1e-6;
            probs.push_back(p.prob);
        }
        REQUIRE(normalize_and_accumulate(set));
        const auto want = oracles::prefix_sums_reference(probs);
        for (std::size_t i = 0; i < want.size(); ++i)
            CHECK(std::abs(set.cumulative[i] - want[i]) < 1e-12);
    }
}

TEST_CASE("stratified resampling: degenerate weights select the single ancestor") {
    ParticleSet set = set_with_costs({900, 100, 900, 900});
    set.particles[1].params = {42.0, -1.0};
    for (std::size_t i = 0; i < 4; ++i) set.particles[i].prob = i == 1 ? 1.0 : 0.0;
    REQUIRE(normalize_and_accumulate(set));
    const ParticleSet out = srs_step(set, unit_noise(2, 0.01), 7, 0);
    CHECK(out.cycle == set.cycle + 1);
    // slot 1 is the argmin copy; every stochastic slot descends from index 1
    CHECK(out.particles[0].params == set.particles[1].params);
    for (std::size_t i = 1; i < 4; ++i) {
        CHECK(out.particles[i].params[0] == doctest::Approx(42.0).epsilon(0.01));
        CHECK(out.particles[i].params[1] == doctest::Approx(-1.0).epsilon(0.5));
    }
}

TEST_CASE("stratified resampling: uniform weights spread ancestors near-evenly") {
    // N-1 draws, one per stratum of width 1/(N-1), land in N ancestor cells
    // of width 1/N: consecutive-but-one draws are more than one cell apart,
    // so a cell can collect at most two draws.
    const std::size_t n = 200;
    ParticleSet set = set_with_costs(std::vector<Cost>(n, 50));
    for (std::size_t i = 0; i < n; ++i) set.particles[i].params = {static_cast<double>(i)};
    assign_probabilities(set, 100.0);
    REQUIRE(normalize_and_accumulate(set));
    DofNoise none = unit_noise(1, 0.0);  // zero noise keeps ancestor ids readable
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const ParticleSet out = srs_step(set, none, seed, 1);
        std::map<long, int> counts;
        for (std::size_t i = 1; i < n; ++i)
            counts[std::lround(out.particles[i].params[0])] += 1;
        int total = 0;
        for (const auto& [ancestor, count] : counts) {
            CHECK(count <= 2);
            total += count;
        }
        CHECK(total == static_cast<int>(n) - 1);
    }
}

TEST_CASE("stratified resampling is deterministic in the seed") {
    ParticleSet set = set_with_costs({10, 20, 30, 40, 50});
    assign_probabilities(set, 30.0);
    REQUIRE(normalize_and_accumulate(set));
    const ParticleSet a = srs_step(set, unit_noise(2), 1234, 2);
    const ParticleSet b = srs_step(set, unit_noise(2), 1234, 2);
    const ParticleSet c = srs_step(set, unit_noise(2), 1235, 2);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(a.particles[i].params == b.particles[i].params);
    }
    bool any_different = false;
    for (std::size_t i = 1; i < 5; ++i)
        if (a.particles[i].params != c.particles[i].params) any_different = true;
    CHECK(any_different);
}

TEST_CASE("stratified resampling requires accumulated weights") {
    ParticleSet set = set_with_costs({1, 2, 3});
    CHECK_THROWS_AS(srs_step(set, unit_noise(2), 1, 0), std::invalid_argument);
}

TEST_CASE("deterministic resampling partition sizes") {
    CHECK(drs_survivor_count(0.2, 200) == 40);  // slots: 1 best + 39 survivors + 160 refills
    CHECK(drs_survivor_count(0.4, 200) == 80);
    CHECK(drs_survivor_count(0.3, 200) == 60);
    CHECK(drs_survivor_count(1.0, 200) == 200);
    CHECK(drs_survivor_count(0.33, 10) == 3);
}

TEST_CASE("deterministic resampling: elite slot, survivors in rank order, refills from best") {
    const std::size_t n = 10;
    std::vector<Cost> costs{50, 10, 40, 30, 90, 20, 80, 70, 60, 100};
    ParticleSet set = set_with_costs(costs);
    DofNoise none = unit_noise(2, 0.0);
    const ParticleSet out = drs_step(set, 0.5, none, 5, 0);
    CHECK(out.cycle == 1);
    // ranked ancestor ids by cost: 1,5,3,2,0 survive (floor(0.5*10)=5)
    CHECK(out.particles[0].params[0] == 1.0);  // unperturbed best
    CHECK(out.particles[1].params[0] == 5.0);
    CHECK(out.particles[2].params[0] == 3.0);
    CHECK(out.particles[3].params[0] == 2.0);
    CHECK(out.particles[4].params[0] == 0.0);
    for (std::size_t i = 5; i < n; ++i) CHECK(out.particles[i].params[0] == 1.0);
}

TEST_CASE("deterministic resampling: survival rate 1 keeps every ranked particle") {
    std::vector<Cost> costs{9, 3, 7, 1};
    ParticleSet set = set_with_costs(costs);
    DofNoise none = unit_noise(2, 0.0);
    const ParticleSet out = drs_step(set, 1.0, none, 5, 0);
    // no refill slots; ranked order 3,1,2,0
    CHECK(out.particles[0].params[0] == 3.0);
    CHECK(out.particles[1].params[0] == 1.0);
    CHECK(out.particles[2].params[0] == 2.0);
    CHECK(out.particles[3].params[0] == 0.0);
}

TEST_CASE("deterministic resampling: ties rank by original index") {
    std::vector<Cost> costs{5, 5, 5, 2};
    ParticleSet set = set_with_costs(costs);
    DofNoise none = unit_noise(2, 0.0);
    const ParticleSet out = drs_step(set, 1.0, none, 5, 0);
    CHECK(out.particles[0].params[0] == 3.0);
    CHECK(out.particles[1].params[0] == 0.0);
    CHECK(out.particles[2].params[0] == 1.0);
    CHECK(out.particles[3].params[0] == 2.0);
}

TEST_CASE("deterministic resampling validates the survival rate") {
    ParticleSet set = set_with_costs({1, 2, 3, 4});
    CHECK_THROWS_AS(drs_step(set, 0.0, unit_noise(2), 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(drs_step(set, 1.5, unit_noise(2), 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(drs_step(set, 0.1, unit_noise(2), 1, 0), std::invalid_argument);  // e*N < 1
}

TEST_CASE("perturbation noise clamps to the DOF bounds") {
    ParticleSet set = set_with_costs({0, 1});
    set.particles[0].params = {9.9, -9.9};
    set.particles[1].params = {9.9, -9.9};
    DofNoise noise = unit_noise(2, 5.0, 10.0);
    for (int seed = 0; seed < 20; ++seed) {
        const ParticleSet out = drs_step(set, 1.0, noise, static_cast<std::uint64_t>(seed), 0);
        for (const Particle& p : out.particles)
            for (double v : p.params) {
                CHECK(v <= 10.0);
                CHECK(v >= -10.0);
            }
    }
}

TEST_CASE("stratified selection frequencies track the weights") {
    // fixed random weights, many rounds: empirical ancestor frequency of the
    // stochastic slots stays within 3 standard errors of the weight
    const std::size_t n = 200;
    ParticleSet set = set_with_costs(std::vector<Cost>(n, 0));
    RngStream wrng(888);
    for (Particle& p : set.particles) p.prob = wrng.uniform() + 1e-3;
    REQUIRE(normalize_and_accumulate(set));

    const int rounds = 2000;
    std::vector<std::uint64_t> counts(n, 0);
    DofNoise none = unit_noise(2, 0.0);
    for (int r = 0; r < rounds; ++r) {
        const ParticleSet out =
            srs_step(set, none, static_cast<std::uint64_t>(r), 3);
        for (std::size_t i = 1; i < n; ++i)
            counts[static_cast<std::size_t>(std::lround(out.particles[i].params[0]))] += 1;
    }
    const double draws = static_cast<double>(rounds) * static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = set.particles[i].weight;
        const double freq = static_cast<double>(counts[i]) / draws;
        const double se = std::sqrt(w * (1.0 - w) / draws);
        CHECK(std::abs(freq - w) <= 3.0 * se + 1e-12);
    }
}
