#ifndef CARPETLAB_HARNACK_HPP
#define CARPETLAB_HARNACK_HPP

#include <cstdint>
#include <vector>

#include "carpetlab/graph.hpp"

namespace carpetlab {

struct HarnackAtom {
    int label = 0;  // boundary segment 1..16
    double sup = 0.0, inf = 0.0;
    double ratio = 0.0;
    bool degenerate = false;  // inf numerically zero
};

struct HarnackReport {
    int m = 0;
    std::int64_t ci = 0, cj = 0;  // center (ci, cj) * 3^m
    int mesh = 0;
    double theta = 1.0;
    std::vector<HarnackAtom> atoms;
};

// D_m block of the pre-carpet centered at (ci, cj) * 3^m with its outer
// boundary absorbing in 16 counterclockwise segments (label 1 starts at
// {+3^m} x [0, 3^m/2) relative to the center).
CellGraph harnack_domain(std::int64_t ci, std::int64_t cj, int m, const WeightConfig& cfg,
                         int mesh);

// One exact Dirichlet solve per boundary atom; entry is empty when the atom
// has no boundary nodes (side of a filled square).
std::vector<std::vector<double>> harmonic_measure_atoms(const CellGraph& g, int nlabels,
                                                        double tol = 1e-10);

// theta = max over atoms of sup/inf of the atom's harmonic measure over the
// grid nodes of G_m (the central box of half-width (2/3) 3^m).
HarnackReport harnack_constant(std::int64_t ci, std::int64_t cj, int m, const WeightConfig& cfg,
                               int mesh, double tol = 1e-10);

}  // namespace carpetlab

#endif
