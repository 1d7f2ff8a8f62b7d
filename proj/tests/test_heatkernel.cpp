#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "carpetlab/heatkernel.hpp"

using namespace carpetlab;

namespace {

constexpr double kBeta = 2.1;

const KernelChain& chain1() {
    static KernelChain ch = make_kernel_chain(1, WeightConfig(1.0), kBeta);
    return ch;
}

const KernelChain& chain2() {
    static KernelChain ch = make_kernel_chain(2, WeightConfig(1.0), kBeta);
    return ch;
}

}  // namespace

TEST_CASE("kernel chain normalization") {
    const auto& ch = chain1();
    CHECK(ch.dt == doctest::Approx(std::pow(3.0, -kBeta)));
    double total = std::accumulate(ch.m.begin(), ch.m.end(), 0.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& nd : ch.graph.nodes) {
        CHECK(nd.x >= 0.0);
        CHECK(nd.x <= 1.0);
    }
}

TEST_CASE("evolution conserves mass") {
    const auto& ch = chain1();
    std::vector<double> dist(ch.graph.nodes.size(), 0.0);
    dist[0] = 1.0;
    evolve(ch, dist, 50);
    double total = std::accumulate(dist.begin(), dist.end(), 0.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    for (double d : dist) CHECK(d >= 0.0);
}

TEST_CASE("transition density is symmetric (reversibility)") {
    const auto& ch = chain1();
    double t = 20.0 * ch.dt;
    int x = chain_node(ch, Point{0.2, 0.2});
    int y = chain_node(ch, Point{0.8, 0.5});
    auto qx = transition_density(ch, x, t);
    auto qy = transition_density(ch, y, t);
    CHECK(qx[static_cast<std::size_t>(y)] ==
          doctest::Approx(qy[static_cast<std::size_t>(x)]).epsilon(1e-9));
}

TEST_CASE("long-time limit is equilibrium") {
    const auto& ch = chain1();
    auto q = transition_density(ch, 0, 5000.0 * ch.dt);
    for (double v : q) CHECK(v == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Chapman-Kolmogorov on a sampled pair") {
    const auto& ch = chain1();
    int x = chain_node(ch, Point{0.15, 0.5});
    int y = chain_node(ch, Point{0.85, 0.5});
    double t = 12.0 * ch.dt, s = 20.0 * ch.dt;
    auto qt = transition_density(ch, x, t);
    auto qs = transition_density(ch, y, s);  // = q_s(., y) by symmetry
    auto qts = transition_density(ch, x, t + s);
    double composed = 0.0;
    for (std::size_t z = 0; z < qt.size(); ++z) composed += qt[z] * qs[z] * ch.m[z];
    CHECK(composed == doctest::Approx(qts[static_cast<std::size_t>(y)]).epsilon(1e-8));
}

TEST_CASE("monotone on-diagonal decay") {
    const auto& ch = chain2();
    int x = chain_node(ch, Point{0.5, 0.1});
    auto q1 = transition_density(ch, x, 30.0 * ch.dt);
    auto q2 = transition_density(ch, x, 60.0 * ch.dt);
    CHECK(q2[static_cast<std::size_t>(x)] < q1[static_cast<std::size_t>(x)]);
}

TEST_CASE("power and Monte Carlo densities agree within 3 SE") {
    const auto& ch = chain1();
    int x = chain_node(ch, Point{0.5, 0.15});
    double t = 10.0 * ch.dt;
    long samples = 20'000;
    auto exact = transition_density(ch, x, t);
    auto mc = transition_density(ch, x, t, samples, 99);
    for (std::size_t y = 0; y < exact.size(); ++y) {
        double p = exact[y] * ch.m[y];  // landing probability
        double se = std::sqrt(p * (1.0 - p) / static_cast<double>(samples)) / ch.m[y];
        // ~1500 comparisons share this bound; allow for multiplicity.
        CHECK(std::abs(mc[y] - exact[y]) <= 5.0 * se + 1e-9);
    }
}

TEST_CASE("diagonal profile stays within a bounded band") {
    const auto& ch = chain2();
    double t0 = 20.0 * ch.dt;
    auto prof = diagonal_profile(ch, Point{0.5, 0.15}, {t0, 2 * t0, 5 * t0, 10 * t0});
    REQUIRE(prof.table.size() == 4);
    CHECK(prof.band_lo > 0.0);
    CHECK(prof.band_hi / prof.band_lo < 10.0);
    for (const auto& e : prof.table) CHECK(e.mu_ball > 0.0);
}

TEST_CASE("rescaling identity between consecutive levels") {
    // Deep levels keep the walk away from the outer boundary, where the
    // restricted fine graph and the coarse graph genuinely differ.
    KernelChain coarse = make_kernel_chain(2, WeightConfig(1.0), kBeta);
    KernelChain fine = make_kernel_chain(3, WeightConfig(1.0), kBeta);
    auto check = rescaling_check(coarse, fine, Point{0.13, 0.13}, Point{0.2, 0.15},
                                 30.0 * fine.dt);
    CHECK(check.fine > 0.0);
    CHECK(check.rel_err < 0.05);
}

TEST_CASE("envelope fit produces a two-sided bound") {
    const auto& ch = chain2();
    double t0 = 25.0 * ch.dt;
    auto fit = envelope_fit(ch, Point{0.5, 0.15}, {t0, 2 * t0, 4 * t0});
    CHECK(fit.c2 > 0.0);
    CHECK(fit.c1 <= fit.c3);
    // Every point lies between the two exponential envelopes by construction.
    for (const auto& p : fit.points) {
        CHECK(p.val <= std::log(fit.c3) - fit.c2 * p.xi + 1e-9);
        CHECK(p.val >= std::log(fit.c1) - fit.c2 * p.xi - 1e-9);
    }
}
