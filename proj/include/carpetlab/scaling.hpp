#ifndef CARPETLAB_SCALING_HPP
#define CARPETLAB_SCALING_HPP

#include <string>
#include <utility>
#include <vector>

#include "carpetlab/geometry.hpp"

namespace carpetlab {

struct ResistanceEntry {
    int n = 0;
    double grid = 0.0;                         // Richardson-extrapolated grid value
    double grid_coarse = 0.0, grid_fine = 0.0;  // the two underlying meshes
    double g = 0.0, d = 0.0;                    // R_n^G, R_n^D
    double residual = 0.0;                      // worst solver residual
};

struct InequalityEntry {
    std::string name;
    int n = 0, m = 0;
    double lhs = 0.0, rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    double slack = 0.0;   // numerical allowance on the favorable side
    bool holds = false;
};

struct LambdaEstimate {
    double fit = 1.0;        // least-squares slope of log R_n vs n
    double fekete_lo = 1.0;  // max_n (R_n / c)^{1/n}
    double fekete_hi = 1.0;  // min_n (c R_n)^{1/n}
    double c = 1.0;          // calibrated multiplicative constant
};

struct ScalingReport {
    double rho = 1.0;
    int mesh_coarse = 9, mesh_fine = 27;
    std::vector<ResistanceEntry> table;
    LambdaEstimate lambda;
    double beta = 2.0;
    std::vector<InequalityEntry> ledger;
};

// R_n (grid, two meshes + Richardson in 1/k^2), R_n^G, R_n^D for n = 1..n_max.
// n <= 0 is the full square with R_n = 1 and is not tabulated.
std::vector<ResistanceEntry> resistance_sequence(const WeightConfig& cfg, int n_max,
                                                 int mesh_coarse = 9, int mesh_fine = 27,
                                                 double tol = 1e-10);

// Fit and Fekete bracket from R_1..R_n (R_0 = 1 implied). Requires >= 3 terms.
LambdaEstimate estimate_lambda(const std::vector<double>& r);

// R_{n+m} <= R_n R_m^G, R_m^D <= R_m^G, and (1/2) R_n R_m^D <= R_{n+m} for
// each requested pair; violations are ledger entries, not errors.
std::vector<InequalityEntry> verify_inequalities(const WeightConfig& cfg,
                                                 const std::vector<std::pair<int, int>>& pairs,
                                                 int mesh = 9, double tol = 1e-10);

// Psi(r) = r^beta for r >= 1, r^2 for 0 < r <= 1.
double psi(double r, double beta);

// beta = log(4+4 rho)/log 3 + log(lambda)/log 3.
double beta_exponent(double rho, double lambda);

ScalingReport scaling_report(const WeightConfig& cfg, int n_max, int mesh_coarse = 9,
                             int mesh_fine = 27, double tol = 1e-10);

}  // namespace carpetlab

#endif
