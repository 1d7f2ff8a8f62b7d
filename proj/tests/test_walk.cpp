#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "carpetlab/walk.hpp"

using namespace carpetlab;

TEST_CASE("pattern tables: filled squares and default weights") {
    WeightConfig cfg(2.0);
    auto a = make_square_config('a', 1, cfg);
    CHECK(square_filled(a, 2));
    CHECK(square_filled(a, 3));
    CHECK(square_filled(a, 4));
    CHECK(!square_filled(a, 1));
    CHECK(a.weight == std::array<double, 4>{1, 0, 0, 0});

    auto f = make_square_config('f', 1, cfg);
    CHECK(square_filled(f, 2));
    CHECK(f.weight == std::array<double, 4>{2, 0, 2, 1});

    auto g = make_square_config('g', 1, cfg);
    CHECK(!square_filled(g, 2));
    CHECK(g.weight == std::array<double, 4>{4, 2, 1, 2});
}

TEST_CASE("square block cells translate the level-m square") {
    WeightConfig cfg(1.0);
    auto g1 = make_square_config('g', 1, cfg);
    CHECK(square_block_cells(g1).size() == 32);  // 4 unfilled squares, 8 cells each
    auto a0 = make_square_config('a', 0, cfg);
    auto cells = square_block_cells(a0);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].i == 0);
    CHECK(cells[0].j == 0);
}

TEST_CASE("exact hitting distributions are probability vectors") {
    WeightConfig cfg(2.0);
    auto sq = make_square_config('c', 0, cfg);
    int nlabels = 0;
    auto g = corner_domain(sq, 9, &nlabels);
    REQUIRE(nlabels == 12);
    int start = nearest_node(g, Point{0.3, 0.0}, {NodeRole::Interface});
    REQUIRE(start >= 0);
    auto hd = hitting_distribution(g, start, nlabels);
    double total = 0.0;
    for (int lab = 1; lab <= nlabels; ++lab) {
        CHECK(hd.mass[static_cast<std::size_t>(lab)] >= 0.0);
        total += hd.mass[static_cast<std::size_t>(lab)];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("Monte Carlo agrees with the exact solve within 3 SE") {
    WeightConfig cfg(1.0);
    auto sq = make_square_config('a', 0, cfg);
    int nlabels = 0;
    auto g = corner_domain(sq, 3, &nlabels);
    REQUIRE(nlabels == 6);
    int start = nearest_node(g, Point{0.5, 0.0}, {NodeRole::Interface});
    REQUIRE(start >= 0);
    auto exact = hitting_distribution(g, start, nlabels);
    auto mc = hitting_distribution(g, start, nlabels, 4000, 17);
    for (int lab = 1; lab <= nlabels; ++lab) {
        double se = mc.se[static_cast<std::size_t>(lab)];
        CHECK(std::abs(mc.mass[static_cast<std::size_t>(lab)] -
                       exact.mass[static_cast<std::size_t>(lab)]) <= 3.0 * se + 1e-9);
    }
}

TEST_CASE("corner move bound holds for the filled case") {
    WeightConfig cfg(1.0);
    auto sq = make_square_config('a', 0, cfg);
    // The bound is claimed for starts on the left half [0, 3^m/2] x {0}.
    auto rep = corner_move_check(sq, {0.1, 0.25, 0.45}, 9);
    CHECK(rep.bound == doctest::Approx(1.0 / 6.0));
    for (const auto& s : rep.samples) CHECK(s.p6 >= rep.bound - 0.02);
}

TEST_CASE("corner move bound uses the weight ratio when S_4 is open") {
    WeightConfig cfg(2.0);
    auto sq = make_square_config('c', 0, cfg);  // weights (1, 0, 0, rho)
    auto rep = corner_move_check(sq, {0.2, 0.45}, 9);
    CHECK(rep.bound == doctest::Approx(1.0 / (6.0 * (1.0 + 2.0))));
    for (const auto& s : rep.samples) CHECK(s.p6 >= rep.bound - 0.02);
}

TEST_CASE("reflected quadrant lower bound p_1 >= 1/4") {
    WeightConfig cfg(1.0);
    auto sq = make_square_config('a', 0, cfg);
    for (const auto& s : reflected_quadrant_check(sq, {0.1, 0.3, 0.5}, 9))
        CHECK(s.p1 >= 0.25 - 0.02);
}

TEST_CASE("folding identity is exact on the discrete graphs") {
    for (double rho : {1.0, 2.0}) {
        WeightConfig cfg(rho);
        auto sq = make_square_config('c', 0, cfg);
        for (int label : {1, 2, 3}) {
            auto r = folding_check(sq, 0.5, label, 9, 1e-12);
            CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-8));
        }
    }
}

TEST_CASE("Y-chain matrix matches the closed form") {
    WeightConfig cfg(2.0);
    auto sq = make_square_config('g', 0, cfg);  // weights (4, 2, 1, 2)
    auto p = y_chain_matrix(sq);
    CHECK(p[0][1] == doctest::Approx(4.0 / 6.0));   // w1/(w1+w4)
    CHECK(p[0][3] == doctest::Approx(2.0 / 6.0));
    CHECK(p[1][2] == doctest::Approx(2.0 / 6.0));   // w2/(w2+w1)
    CHECK(p[1][0] == doctest::Approx(4.0 / 6.0));
    for (int i = 0; i < 4; ++i)
        CHECK(p[static_cast<std::size_t>(i)][0] + p[static_cast<std::size_t>(i)][1] +
                  p[static_cast<std::size_t>(i)][2] + p[static_cast<std::size_t>(i)][3] ==
              doctest::Approx(1.0));
}

TEST_CASE("simulated Y-chain frequencies follow the law") {
    WeightConfig cfg(2.0);
    auto sq = make_square_config('g', 0, cfg);
    auto rep = y_chain_simulate(sq, 20'000, 5, 3);
    for (int i = 0; i < 4; ++i) {
        long n = rep.row_total[static_cast<std::size_t>(i)];
        if (n == 0) continue;
        for (int j = 0; j < 4; ++j) {
            double p = rep.expected[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
            CHECK(std::abs(rep.empirical[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                           p) <= 4.0 * se + 1e-9);
        }
    }
}

TEST_CASE("knight move probability is positive and sums with its atoms") {
    WeightConfig cfg(1.0);
    auto sq = make_square_config('g', 0, cfg);
    auto rep = knight_move_check(sq, {0.25, 0.45}, 9);
    CHECK(rep.min_p1 > 0.0);
    for (const auto& s : rep.samples) CHECK(s.p6 > 0.0);
}

TEST_CASE("exit times grow quadratically in the Euclidean regime") {
    WeightConfig cfg(1.0);
    auto rep = mean_exit_time(Point{0.5, 0.5}, {0.15, 0.3}, cfg, 27);
    REQUIRE(rep.table.size() == 2);
    CHECK(rep.table[0].mean > 0.0);
    CHECK(rep.table[1].mean > rep.table[0].mean);
    CHECK(rep.exponent == doctest::Approx(2.0).epsilon(0.25));
}

TEST_CASE("Monte Carlo exit times agree with the exact solve") {
    WeightConfig cfg(1.0);
    auto exact = mean_exit_time(Point{0.5, 0.5}, {0.3}, cfg, 9);
    auto mc = mean_exit_time(Point{0.5, 0.5}, {0.3}, cfg, 9, 2000, 23);
    CHECK(std::abs(mc.table[0].mean - exact.table[0].mean) <=
          4.0 * mc.table[0].se + 1e-9);
}
