#ifndef CARPETLAB_WALK_HPP
#define CARPETLAB_WALK_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "carpetlab/graph.hpp"

namespace carpetlab {

// A 2x2 block D_m centered at the origin: squares S_1 (upper right), S_2,
// S_3, S_4 labeled counterclockwise, each of side 3^m. S_1 is always
// unfilled; the legal filled patterns are 'a'..'g'. Each unfilled square is
// a translate of the standard level-m pre-carpet square, scaled by its
// mu_0 weight factor.
struct SquareConfig {
    char pattern = 'g';
    int m = 0;
    WeightConfig cfg;
    std::array<double, 4> weight = {1.0, 0.0, 0.0, 0.0};  // 0 where filled
};

// Weights default to a concrete pre-carpet instance of the pattern.
SquareConfig make_square_config(char pattern, int m, const WeightConfig& cfg);

bool square_filled(const SquareConfig& sq, int i);  // i = 1..4

// Cells of the unfilled squares, center of D_m at the origin.
std::vector<CellSpec> square_block_cells(const SquareConfig& sq);

struct HittingDistribution {
    std::vector<double> mass;  // index 0 unused; 1..nlabels
    std::vector<double> se;    // standard errors (Monte Carlo only)
    long samples = 0;          // 0 means exact solve
};

// Exact harmonic measure (samples = 0) or Monte Carlo estimate of the
// absorption label distribution of the conductance walk from `start`.
HittingDistribution hitting_distribution(const CellGraph& g, int start, int nlabels,
                                         long samples = 0, std::uint64_t seed = 1,
                                         double tol = 1e-10, long step_cap = 100'000'000);

// Corner-move domain: S_1 alone when S_4 is filled (absorbing L_1..L_6,
// reflecting bottom) or S_1 u S_4 (absorbing L_1..L_12); pendant nodes on
// y = 0 serve as start points. nlabels receives 6 or 12.
CellGraph corner_domain(const SquareConfig& sq, int mesh, int* nlabels);

struct CornerMoveSample {
    double x = 0.0;   // requested start abscissa on [0, 3^m/2]
    double p6 = 0.0;  // exact exit probability through L_6
};

struct CornerMoveReport {
    double bound = 0.0;  // 1/6 or mu_1/(6(mu_1+mu_4))
    std::vector<CornerMoveSample> samples;
};

CornerMoveReport corner_move_check(const SquareConfig& sq, const std::vector<double>& xs,
                                   int mesh, double tol = 1e-10);

struct QuadrantSample {
    double x = 0.0;
    double p1 = 0.0;
};

// Prop-style reflected quadrant: S_1 with reflecting bottom and left,
// absorbing right (L_1, L_2 bottom-up) and top (L_3, L_4 right-to-left).
std::vector<QuadrantSample> reflected_quadrant_check(const SquareConfig& sq,
                                                     const std::vector<double>& xs, int mesh,
                                                     double tol = 1e-10);

struct FoldingResult {
    double lhs = 0.0;  // two-square expectation
    double rhs = 0.0;  // weighted folded one-square expectation
};

// Folding identity for f = indicator of L_label (label in 1..6), start on
// the shared edge at (x, 0). Requires S_4 unfilled.
FoldingResult folding_check(const SquareConfig& sq, double x, int label, int mesh,
                            double tol = 1e-10);

// Closed-form excursion chain matrix p_{i,j} (row/col 0-based for S_1..S_4).
std::array<std::array<double, 4>, 4> y_chain_matrix(const SquareConfig& sq);

struct YChainReport {
    std::array<std::array<double, 4>, 4> expected{};
    std::array<std::array<double, 4>, 4> empirical{};
    std::array<std::array<long, 4>, 4> counts{};
    std::array<long, 4> row_total{};
};

YChainReport y_chain_simulate(const SquareConfig& sq, long transitions, std::uint64_t seed,
                              int mesh);

struct KnightMoveReport {
    std::vector<CornerMoveSample> samples;  // p6 field holds p_1 here
    double min_p1 = 0.0;
};

// Full D_m with absorbing 16-segment boundary; p_1 = harmonic measure of
// {3^m} x [0, 3^m/2) from starts on the positive x arm.
KnightMoveReport knight_move_check(const SquareConfig& sq, const std::vector<double>& xs,
                                   int mesh, double tol = 1e-10);

struct ExitTimeEntry {
    double r = 0.0;
    double mean = 0.0;
    double se = 0.0;  // 0 for exact solves
};

struct ExitTimeReport {
    std::vector<ExitTimeEntry> table;
    double exponent = 0.0;  // least-squares slope of log mean vs log r
};

// Expected exit time (diffusion clock: holding time m(v)/c(v)) from the
// L-inf ball B(x, r) on the pre-carpet, exact solve when samples = 0.
ExitTimeReport mean_exit_time(Point x, const std::vector<double>& rs, const WeightConfig& cfg,
                              int mesh, long samples = 0, std::uint64_t seed = 1,
                              double tol = 1e-10);

}  // namespace carpetlab

#endif
