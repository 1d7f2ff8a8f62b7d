#ifndef CARPETLAB_RESISTANCE_HPP
#define CARPETLAB_RESISTANCE_HPP

#include <vector>

#include "carpetlab/graph.hpp"
#include "carpetlab/solver.hpp"

namespace carpetlab {

struct BoundarySpec {
    std::vector<int> b0;  // pinned to 0
    std::vector<int> b1;  // pinned to 1
};

struct PotentialSolution {
    std::vector<double> potential;
    double energy = 0.0;
    double resistance = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

// Edge-indexed antisymmetric current, aligned with g.edges and oriented
// from edges[e].u to edges[e].v.
struct Flow {
    std::vector<double> current;
    std::vector<int> source, sink;
};

// Nodes whose x (axis=0) or y (axis=1) coordinate equals coord.
std::vector<int> nodes_on_line(const CellGraph& g, int axis, double coord, double eps = 1e-9);

PotentialSolution effective_resistance(const CellGraph& g, const BoundarySpec& b,
                                       double tol = 1e-10);

Flow potential_to_flow(const CellGraph& g, const PotentialSolution& sol, const BoundarySpec& b);

double flow_energy(const CellGraph& g, const Flow& f);

// Net out-flux per node.
std::vector<double> flow_divergence(const CellGraph& g, const Flow& f);

double flux(const CellGraph& g, const Flow& f, const std::vector<int>& node_set);

// res(A, Omega): reciprocal energy of the potential pinned 1 on A and 0 on
// the complement of Omega.
double res(const CellGraph& g, const std::vector<int>& a, const std::vector<int>& omega,
           double tol = 1e-10);

struct AnnulusResult {
    double resistance = 0.0;
    double mu_inner = 0.0;  // mu_0 of the L-inf ball of radius 3^n at x0
};

// res(B_inf(x0, k*3^n), B_inf(x0, (k+1)*3^n)) on the finite-volume grid.
AnnulusResult annulus_resistance(std::int64_t cx, std::int64_t cy, int n, int k,
                                 const WeightConfig& cfg, double tol = 1e-10, int mesh = 9);

// Effective resistance of the level-n cell graphs between the left and the
// right border (L_4 and L_2).
PotentialSolution cross_graph_resistance(int n, const WeightConfig& cfg, double tol = 1e-10);
PotentialSolution diag_graph_resistance(int n, const WeightConfig& cfg, double tol = 1e-10);

// Grid-method R_n on F_0^n at the given mesh.
PotentialSolution grid_resistance(int n, const WeightConfig& cfg, int mesh, double tol = 1e-10);

}  // namespace carpetlab

#endif
