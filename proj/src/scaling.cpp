#include "carpetlab/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "carpetlab/resistance.hpp"

namespace carpetlab {

std::vector<ResistanceEntry> resistance_sequence(const WeightConfig& cfg, int n_max,
                                                 int mesh_coarse, int mesh_fine, double tol) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    double rc = static_cast<double>(mesh_coarse) / mesh_fine;
    double denom = 1.0 / (rc * rc) - 1.0;  // Richardson weight for O(1/k^2) error
    std::vector<ResistanceEntry> out;
    for (int n = 1; n <= n_max; ++n) {
        ResistanceEntry e;
        e.n = n;
        auto coarse = grid_resistance(n, cfg, mesh_coarse, tol);
        auto fine = grid_resistance(n, cfg, mesh_fine, tol);
        e.grid_coarse = coarse.resistance;
        e.grid_fine = fine.resistance;
        e.grid = fine.resistance + (fine.resistance - coarse.resistance) / denom;
        auto g = cross_graph_resistance(n, cfg, tol);
        auto d = diag_graph_resistance(n, cfg, tol);
        e.g = g.resistance;
        e.d = d.resistance;
        e.residual = std::max({coarse.residual, fine.residual, g.residual, d.residual});
        out.push_back(e);
    }
    return out;
}

LambdaEstimate estimate_lambda(const std::vector<double>& r) {
    if (r.size() < 3) throw std::invalid_argument("need at least 3 resistance values");
    int nmax = static_cast<int>(r.size());
    auto rn = [&](int n) { return n == 0 ? 1.0 : r[static_cast<std::size_t>(n - 1)]; };

    LambdaEstimate est;
    {
        double sn = 0, sy = 0, snn = 0, sny = 0;
        for (int n = 1; n <= nmax; ++n) {
            double y = std::log(rn(n));
            sn += n;
            sy += y;
            snn += static_cast<double>(n) * n;
            sny += n * y;
        }
        double cnt = nmax;
        est.fit = std::exp((cnt * sny - sn * sy) / (cnt * snn - sn * sn));
    }

    est.c = 1.0;
    for (int n = 0; n <= nmax; ++n)
        for (int m = 0; m + n <= nmax; ++m) {
            double ratio = rn(n + m) / (rn(n) * rn(m));
            est.c = std::max({est.c, ratio, 1.0 / ratio});
        }

    est.fekete_lo = 0.0;
    est.fekete_hi = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= nmax; ++n) {
        est.fekete_lo = std::max(est.fekete_lo, std::pow(rn(n) / est.c, 1.0 / n));
        est.fekete_hi = std::min(est.fekete_hi, std::pow(est.c * rn(n), 1.0 / n));
    }
    return est;
}

std::vector<InequalityEntry> verify_inequalities(const WeightConfig& cfg,
                                                 const std::vector<std::pair<int, int>>& pairs,
                                                 int mesh, double tol) {
    std::vector<InequalityEntry> out;
    auto push = [&](const char* name, int n, int m, double lhs, double rhs, double residual) {
        InequalityEntry e;
        e.name = name;
        e.n = n;
        e.m = m;
        e.lhs = lhs;
        e.rhs = rhs;
        e.margin = rhs - lhs;
        e.slack = 4.0 * residual * std::max(std::abs(lhs), std::abs(rhs));
        e.holds = lhs <= rhs + e.slack;
        out.push_back(e);
    };
    for (auto [n, m] : pairs) {
        auto r_n = grid_resistance(n, cfg, mesh, tol);
        auto r_nm = grid_resistance(n + m, cfg, mesh, tol);
        auto g_m = cross_graph_resistance(m, cfg, tol);
        auto d_m = diag_graph_resistance(m, cfg, tol);
        double res = std::max({r_n.residual, r_nm.residual, g_m.residual, d_m.residual});
        push("R_{n+m} <= R_n R_m^G", n, m, r_nm.resistance, r_n.resistance * g_m.resistance, res);
        push("R_m^D <= R_m^G", n, m, d_m.resistance, g_m.resistance, res);
        push("(1/2) R_n R_m^D <= R_{n+m}", n, m, 0.5 * r_n.resistance * d_m.resistance,
             r_nm.resistance, res);
    }
    return out;
}

double psi(double r, double beta) {
    if (!(r > 0.0)) throw std::invalid_argument("psi requires r > 0");
    return r >= 1.0 ? std::pow(r, beta) : r * r;
}

double beta_exponent(double rho, double lambda) {
    return std::log(4.0 + 4.0 * rho) / std::log(3.0) + std::log(lambda) / std::log(3.0);
}

ScalingReport scaling_report(const WeightConfig& cfg, int n_max, int mesh_coarse, int mesh_fine,
                             double tol) {
    ScalingReport rep;
    rep.rho = cfg.rho;
    rep.mesh_coarse = mesh_coarse;
    rep.mesh_fine = mesh_fine;
    rep.table = resistance_sequence(cfg, n_max, mesh_coarse, mesh_fine, tol);

    std::vector<double> r;
    for (const auto& e : rep.table) r.push_back(e.grid);
    rep.lambda = estimate_lambda(r);
    rep.beta = beta_exponent(cfg.rho, rep.lambda.fit);

    std::vector<std::pair<int, int>> pairs;
    for (int n = 1; n <= n_max; ++n)
        for (int m = 1; n + m <= n_max; ++m) pairs.emplace_back(n, m);
    rep.ledger = verify_inequalities(cfg, pairs, mesh_coarse, tol);
    return rep;
}

}  // namespace carpetlab
