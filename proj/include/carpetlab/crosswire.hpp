#ifndef CARPETLAB_CROSSWIRE_HPP
#define CARPETLAB_CROSSWIRE_HPP

#include <array>
#include <vector>

#include "carpetlab/graph.hpp"

namespace carpetlab {

// Grid realization of F_0^n with absorbing half-edge nodes on all four
// borders L_1 (bottom) .. L_4 (left), the dihedral symmetry permutations,
// the twelve unit flows I^{ij} (injecting +1 at L_i, absorbing at L_j), and
// the four rotated optimal potentials u^i.
//
// Flow convention: a flow is an edge-indexed current vector aligned with
// graph.edges and oriented u -> v; Flux(flow, k) below is the net current
// injected at side L_k, so the optimal L_4 -> L_2 flow I^{42} has
// Flux = +1 at L_4 and -1 at L_2.
struct CrosswireContext {
    CellGraph graph;
    int level = 0;
    int mesh = 0;
    double width = 0.0;  // 3^n

    std::array<std::vector<int>, 4> side;  // boundary nodes of L_1..L_4

    std::vector<int> rot;     // ccw quarter turn about the center
    std::vector<int> refl_h;  // y -> width - y
    std::vector<int> refl_d;  // main diagonal swap (x,y) -> (y,x)

    // Per-edge weight of each triangle T_1..T_4 (midpoint rule, diagonal
    // straddlers split 1/2 - 1/2). Weights sum to 1 over the triangles.
    std::vector<std::array<double, 4>> tri_weight;

    // unit_flow[i-1][j-1] = I^{ij}; diagonal i==j entries unused.
    std::array<std::array<std::vector<double>, 4>, 4> unit_flow;

    // u_pot[i-1] = u^i, the optimal potential rotated ccw by (i-1) pi/2;
    // u^1 is 0 on L_4 and 1 on L_2.
    std::array<std::vector<double>, 4> u_pot;

    double resistance = 0.0;      // energy of the symmetrized unit flow I^42
    double potential_energy = 0;  // 1/R lower bound from the potential side
    double residual = 0.0;
};

CrosswireContext make_crosswire_context(int n, const WeightConfig& cfg, int mesh,
                                        double tol = 1e-10);

// Net current injected at side L_k (k = 1..4).
double crosswire_flux(const CrosswireContext& ctx, const std::vector<double>& flow, int k);

double edge_flow_energy(const CellGraph& g, const std::vector<double>& flow);

// J = sum_{i != j} h^{-1} H_i^+ H_j^- I^{ij} with h = (1/2) sum |H_i|.
// Requires sum H_i = 0 and H not identically zero.
std::vector<double> crosswire_compose(const CrosswireContext& ctx, const std::array<double, 4>& h);

double crosswire_eplus(const std::array<double, 4>& h);  // (1/2) sum H_i^2

struct ComposedPotential {
    std::vector<double> values;  // per graph node
    double energy = 0.0;
};

// f^psi = sum_i [z_i + (2 zbar - z_i - z_{i+1}) v_i + (z_{i+1} - z_i) w_i] 1_{T_i}
// with v_i = u^{i+1}|T_i, w_i = u^i|T_i; z holds the corner values of psi
// counterclockwise from the origin. Nodes on triangle seams average the
// adjacent formulas.
ComposedPotential compose_potential(const CrosswireContext& ctx, const std::array<double, 4>& z);

// Node permutation mapping each node to its image under the coordinate map;
// throws if the map is not a graph automorphism.
std::vector<int> node_permutation(const CellGraph& g, double (*fx)(double, double, double),
                                  double (*fy)(double, double, double), double width, int mesh);

// Transport of flows and potentials along a node permutation.
std::vector<double> transport_flow(const CellGraph& g, const std::vector<int>& perm,
                                   const std::vector<double>& flow);
std::vector<double> transport_potential(const std::vector<int>& perm,
                                        const std::vector<double>& u);

}  // namespace carpetlab

#endif
