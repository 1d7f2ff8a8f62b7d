// Acceptance suite: one line per criterion, exit code 0 iff all pass.

#include <array>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "carpetlab/crosswire.hpp"
#include "carpetlab/harnack.hpp"
#include "carpetlab/heatkernel.hpp"
#include "carpetlab/resistance.hpp"
#include "carpetlab/rng.hpp"
#include "carpetlab/scaling.hpp"
#include "carpetlab/walk.hpp"

using namespace carpetlab;

namespace {

constexpr double kTol = 1e-10;          // linear solver tolerance, everywhere
constexpr double kSquareTol = 0.01;     // criterion 1
constexpr double kDualitySlack = 4.0;   // criterion 2: multiples of tol * R
constexpr double kProbSlack = 0.02;     // criteria 6, 7: probability tolerances
constexpr double kFoldingShrink = 3.0;  // criterion 6 mesh-refinement factor
constexpr double kExitRelTol = 0.10;    // criterion 10
constexpr double kBandWidth = 10.0;     // criterion 11
constexpr double kRescaleTol = 0.01;    // criterion 11
constexpr double kBracketWidth = 0.20;  // criterion 12

int failures = 0;

void report(int num, bool pass, const std::string& text) {
    std::printf("[%2d] %s  %s\n", num, pass ? "PASS" : "FAIL", text.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

template <typename F>
void criterion(int num, F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        report(num, false, std::string("exception: ") + e.what());
    }
}

// Memoized grid resistances (the expensive solves are shared by criteria).
std::map<std::tuple<int, int, double>, PotentialSolution> grid_memo;

const PotentialSolution& grid_r(int n, int mesh, double rho) {
    auto key = std::make_tuple(n, mesh, rho);
    auto it = grid_memo.find(key);
    if (it == grid_memo.end())
        it = grid_memo.emplace(key, grid_resistance(n, WeightConfig(rho), mesh, kTol)).first;
    return it->second;
}

struct GridValue {
    double value = 0.0;  // Richardson extrapolation from meshes 9 and 27
    double err = 0.0;    // residual extrapolation error estimate
};

GridValue grid_extrapolated(int n, double rho) {
    double r9 = grid_r(n, 9, rho).resistance;
    double r27 = grid_r(n, 27, rho).resistance;
    return GridValue{r27 + (r27 - r9) / 8.0, std::abs(r27 - r9) / 8.0};
}

double beta_from_grid(double rho) {
    std::vector<double> r;
    for (int n = 1; n <= 3; ++n) r.push_back(grid_extrapolated(n, rho).value);
    return beta_exponent(rho, estimate_lambda(r).fit);
}

char buf[512];

void c1_square() {
    auto sol = grid_resistance(0, WeightConfig(2.0), 27, kTol);
    bool pass = std::abs(sol.resistance - 1.0) <= kSquareTol;
    std::snprintf(buf, sizeof buf,
                  "square resistance: R = %.6f at k=27 (|R-1| <= %.2g)", sol.resistance,
                  kSquareTol);
    report(1, pass, buf);
}

void c2_duality() {
    double worst = 0.0;
    int count = 0;
    for (double rho : {0.5, 1.0, 2.0}) {
        WeightConfig cfg(rho);
        for (int n = 1; n <= 3; ++n) {
            std::vector<std::pair<CellGraph, double>> cases;
            for (int which = 0; which < 3; ++which) {
                CellGraph g;
                if (which == 0) g = build_cross_graph(n, cfg);
                else if (which == 1) g = build_diag_graph(n, cfg);
                else {
                    double w = std::pow(3.0, n);
                    g = build_grid_graph(region_square(n, cfg), 9,
                                         {{0, 0.0, 0.0, w, 4}, {0, w, 0.0, w, 2}});
                }
                BoundarySpec b;
                double w = std::pow(3.0, n);
                if (which < 2) {
                    b.b0 = nodes_on_line(g, 0, 0.0);
                    b.b1 = nodes_on_line(g, 0, w);
                } else {
                    for (int v = 0; v < g.size(); ++v) {
                        const auto& nd = g.nodes[static_cast<std::size_t>(v)];
                        if (nd.role != NodeRole::Boundary) continue;
                        (nd.label == 4 ? b.b0 : b.b1).push_back(v);
                    }
                }
                auto sol = effective_resistance(g, b, kTol);
                auto flow = potential_to_flow(g, sol, b);
                double gap = std::abs(1.0 / sol.energy - flow_energy(g, flow));
                worst = std::max(worst, gap / (kTol * sol.resistance));
                ++count;
            }
        }
    }
    bool pass = worst <= kDualitySlack;
    std::snprintf(buf, sizeof buf,
                  "Thomson duality: %d instances, worst gap = %.3g x tol*R (limit %g)", count,
                  worst, kDualitySlack);
    report(2, pass, buf);
}

void c3_diag_vs_cross() {
    int violations = 0;
    double worst_margin = 1e300;
    for (double rho : {0.5, 1.0, 2.0, 4.0})
        for (int m = 1; m <= 3; ++m) {
            WeightConfig cfg(rho);
            auto d = diag_graph_resistance(m, cfg, kTol);
            auto g = cross_graph_resistance(m, cfg, kTol);
            double slack = 4.0 * std::max(d.residual, g.residual) * g.resistance;
            worst_margin = std::min(worst_margin, g.resistance - d.resistance);
            if (d.resistance > g.resistance + slack) ++violations;
        }
    std::snprintf(buf, sizeof buf,
                  "diagonal-cross inequality R_m^D <= R_m^G: %d violations, min margin %.3g",
                  violations, worst_margin);
    report(3, violations == 0, buf);
}

void c4_bracket() {
    int violations = 0;
    for (double rho : {1.0, 2.0})
        for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}}) {
            WeightConfig cfg(rho);
            auto rn = grid_extrapolated(n, rho);
            auto rnm = grid_extrapolated(n + m, rho);
            double rg = cross_graph_resistance(m, cfg, kTol).resistance;
            double rd = diag_graph_resistance(m, cfg, kTol).resistance;
            double upper_slack = rn.err * rg + rnm.err + 4.0 * kTol * rnm.value;
            double lower_slack = 0.5 * rn.err * rd + rnm.err + 4.0 * kTol * rnm.value;
            if (rnm.value > rn.value * rg + upper_slack) ++violations;
            if (0.5 * rn.value * rd > rnm.value + lower_slack) ++violations;
        }
    std::snprintf(buf, sizeof buf,
                  "submultiplicativity bracket (1/2)R_n R_m^D <= R_{n+m} <= R_n R_m^G: "
                  "%d violations over 6 pairs x 2 rho", violations);
    report(4, violations == 0, buf);
}

void c5_crosswire() {
    double worst_flux = 0.0, worst_energy = 0.0;
    for (int n : {1, 2}) {
        auto ctx = make_crosswire_context(n, WeightConfig(2.0), n == 1 ? 9 : 3, kTol);
        CounterRng rng(42, static_cast<std::uint64_t>(n));
        for (int trial = 0; trial < 100; ++trial) {
            std::array<double, 4> h{};
            double s = 0.0;
            for (int i = 0; i < 3; ++i) {
                h[static_cast<std::size_t>(i)] = 2.0 * rng.next_double() - 1.0;
                s += h[static_cast<std::size_t>(i)];
            }
            h[3] = -s;
            auto flow = crosswire_compose(ctx, h);
            for (int k = 1; k <= 4; ++k)
                worst_flux = std::max(worst_flux,
                                      std::abs(crosswire_flux(ctx, flow, k) -
                                               h[static_cast<std::size_t>(k - 1)]));
            double ratio = edge_flow_energy(ctx.graph, flow) /
                           (ctx.resistance * crosswire_eplus(h));
            worst_energy = std::max(worst_energy, ratio);
        }
    }
    bool pass = worst_flux <= 1e-8 && worst_energy <= 1.0 + 1e-6;
    std::snprintf(buf, sizeof buf,
                  "crosswire composition: max flux error %.2e (<= 1e-8), max energy ratio "
                  "%.9f (<= 1+1e-6)", worst_flux, worst_energy);
    report(5, pass, buf);
}

void c6_folding() {
    bool pass = true;
    double worst27 = 0.0;
    for (double rho : {1.0, 2.0}) {
        WeightConfig cfg(rho);
        auto sq = make_square_config('c', 1, cfg);
        for (int label : {1, 2, 3}) {
            double res9 = 0.0, res27 = 0.0;
            {
                auto r = folding_check(sq, 1.5, label, 9, kTol);
                res9 = std::abs(r.lhs - r.rhs);
            }
            {
                auto r = folding_check(sq, 1.5, label, 27, kTol);
                res27 = std::abs(r.lhs - r.rhs);
            }
            worst27 = std::max(worst27, res27);
            // The discrete folding identity is exact (mirror-graph gluing),
            // so the refinement clause is satisfied through the solver-noise
            // branch rather than a genuine 1/k^2 decay.
            if (res27 > kProbSlack) pass = false;
            if (!(res9 >= kFoldingShrink * res27 || res27 <= 1e-9)) pass = false;
        }
    }
    std::snprintf(buf, sizeof buf,
                  "folding identity: max |two-square - folded| = %.2e at k=27 "
                  "(limit %.2g, refinement clause via exactness)", worst27, kProbSlack);
    report(6, pass, buf);
}

void c7_corner_knight() {
    bool pass = true;
    double corner_worst = 1e300;
    std::vector<double> xs = {0.15, 0.45, 0.75, 1.05, 1.35};
    for (double rho : {1.0, 2.0})
        for (char pat : {'a', 'c'}) {
            auto sq = make_square_config(pat, 1, WeightConfig(rho));
            auto rep = corner_move_check(sq, xs, 9, kTol);
            for (const auto& s : rep.samples) {
                corner_worst = std::min(corner_worst, s.p6 - rep.bound);
                if (s.p6 < rep.bound - kProbSlack) pass = false;
            }
        }
    double knight_spread = 0.0, knight_min = 1e300;
    for (double rho : {1.0, 2.0}) {
        double lo = 1e300, hi = 0.0;
        for (int m = 0; m <= 2; ++m) {
            auto sq = make_square_config('g', m, WeightConfig(rho));
            double h = std::pow(3.0, m);
            auto rep = knight_move_check(sq, {0.1 * h, 0.25 * h, 0.4 * h}, 27 / (m == 0 ? 1 : m == 1 ? 3 : 9), kTol);
            lo = std::min(lo, rep.min_p1);
            hi = std::max(hi, rep.min_p1);
        }
        knight_min = std::min(knight_min, lo);
        knight_spread = std::max(knight_spread, hi / lo);
        if (!(lo > 0.0) || hi / lo >= 2.0) pass = false;
    }
    std::snprintf(buf, sizeof buf,
                  "corner p_6 - bound >= %.4f (>= -%.2g); knight min p_1 = %.4f > 0, "
                  "spread %.3f < 2 across m", corner_worst, kProbSlack, knight_min,
                  knight_spread);
    report(7, pass, buf);
}

void c8_ychain() {
    bool pass = true;
    double worst_sigma = 0.0;
    for (double rho : {1.0, 2.0}) {
        auto sq = make_square_config('g', 0, WeightConfig(rho));
        auto rep = y_chain_simulate(sq, 100'000, 2024, 9);
        for (int i = 0; i < 4; ++i) {
            long n = rep.row_total[static_cast<std::size_t>(i)];
            if (n == 0) continue;
            for (int j = 0; j < 4; ++j) {
                double p = rep.expected[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                double se = std::sqrt(std::max(p * (1.0 - p), 1e-12) / static_cast<double>(n));
                double sig = std::abs(rep.empirical[static_cast<std::size_t>(i)]
                                                   [static_cast<std::size_t>(j)] - p) / se;
                worst_sigma = std::max(worst_sigma, sig);
                if (sig > 3.0) pass = false;
            }
        }
    }
    std::snprintf(buf, sizeof buf,
                  "Y-chain law, 1e5 excursions: worst deviation %.2f SE (limit 3)", worst_sigma);
    report(8, pass, buf);
}

void c9_harnack() {
    bool pass = true;
    double worst_ratio = 0.0;
    for (double rho : {1.0, 2.0})
        for (auto [ci, cj] : std::vector<std::pair<int, int>>{{3, 1}, {2, 1}}) {
            double lo = 1e300, hi = 0.0;
            for (int m = 1; m <= 3; ++m) {
                int mesh = m == 1 ? 9 : m == 2 ? 3 : 1;
                auto rep = harnack_constant(ci, cj, m, WeightConfig(rho), mesh, kTol);
                if (!std::isfinite(rep.theta)) pass = false;
                lo = std::min(lo, rep.theta);
                hi = std::max(hi, rep.theta);
            }
            worst_ratio = std::max(worst_ratio, hi / lo);
            if (hi / lo > 2.0) pass = false;
        }
    std::snprintf(buf, sizeof buf,
                  "Harnack theta finite for m in {1,2,3}; worst max/min across m = %.3f "
                  "(limit 2)", worst_ratio);
    report(9, pass, buf);
}

void c10_exit_time() {
    bool pass = true;
    double worst_rel = 0.0;
    for (double rho : {1.0, 2.0}) {
        double beta = beta_from_grid(rho);
        auto rep = mean_exit_time(Point{78.5, 78.5}, {3.0, 9.0, 27.0}, WeightConfig(rho), 3,
                                  0, 1, kTol);
        double rel = std::abs(rep.exponent - beta) / beta;
        worst_rel = std::max(worst_rel, rel);
        if (rel > kExitRelTol) pass = false;
    }
    std::snprintf(buf, sizeof buf,
                  "exit-time exponent vs beta: worst relative error %.3f (limit %.2f)",
                  worst_rel, kExitRelTol);
    report(10, pass, buf);
}

void c11_heatkernel() {
    bool pass = true;
    double worst_band = 0.0, worst_rescale = 0.0;
    for (double rho : {1.0, 2.0}) {
        WeightConfig cfg(rho);
        double beta = beta_from_grid(rho);
        auto coarse = make_kernel_chain(4, cfg, beta);
        std::vector<double> ts;
        for (double t = 0.008; t <= 0.080001; t *= std::pow(10.0, 0.25))
            ts.push_back(t);
        auto prof = diagonal_profile(coarse, Point{0.39, 0.39}, ts);
        double band = prof.band_hi / prof.band_lo;
        worst_band = std::max(worst_band, band);
        if (!(prof.band_lo > 0.0) || band > kBandWidth) pass = false;

        auto fine = make_kernel_chain(5, cfg, beta);
        auto rc = rescaling_check(coarse, fine, Point{0.13, 0.13}, Point{0.20, 0.15},
                                  300.0 * fine.dt);
        worst_rescale = std::max(worst_rescale, rc.rel_err);
        if (!(rc.fine > 0.0) || rc.rel_err > kRescaleTol) pass = false;
    }
    std::snprintf(buf, sizeof buf,
                  "on-diagonal band <= %.2f (limit %g); rescaling n=4 -> 5 rel err %.2e "
                  "(limit %g)", worst_band, kBandWidth, worst_rescale, kRescaleTol);
    report(11, pass, buf);
}

void c12_lambda() {
    std::vector<double> r;
    for (int n = 1; n <= 4; ++n) r.push_back(grid_extrapolated(n, 1.0).value);
    auto est = estimate_lambda(r);
    double width = (est.fekete_hi - est.fekete_lo) / est.fit;
    bool pass = est.fekete_lo <= est.fit && est.fit <= est.fekete_hi &&
                width <= kBracketWidth;
    std::snprintf(buf, sizeof buf,
                  "lambda(rho=1): fit %.4f in [%.4f, %.4f], bracket width %.1f%% "
                  "(limit %.0f%%)", est.fit, est.fekete_lo, est.fekete_hi, 100.0 * width,
                  100.0 * kBracketWidth);
    report(12, pass, buf);
}

}  // namespace

int main() {
    criterion(1, c1_square);
    criterion(2, c2_duality);
    criterion(3, c3_diag_vs_cross);
    criterion(4, c4_bracket);
    criterion(5, c5_crosswire);
    criterion(6, c6_folding);
    criterion(7, c7_corner_knight);
    criterion(8, c8_ychain);
    criterion(9, c9_harnack);
    criterion(10, c10_exit_time);
    criterion(11, c11_heatkernel);
    criterion(12, c12_lambda);
    std::printf("%d/12 criteria passed\n", 12 - failures);
    return failures == 0 ? 0 : 1;
}
