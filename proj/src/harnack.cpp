#include "carpetlab/harnack.hpp"

#include <cmath>
#include <stdexcept>

#include "carpetlab/solver.hpp"

namespace carpetlab {

CellGraph harnack_domain(std::int64_t ci, std::int64_t cj, int m, const WeightConfig& cfg,
                         int mesh) {
    std::int64_t side = 1;
    for (int p = 0; p < m; ++p) side *= 3;
    auto cells = region_box(ci * side, cj * side, side, cfg);
    if (cells.empty()) throw std::runtime_error("harnack domain meets no pre-carpet cells");

    const double cx = static_cast<double>(ci * side), cy = static_cast<double>(cj * side);
    const double h = static_cast<double>(side), hh = 0.5 * h;
    // 16 boundary atoms, counterclockwise from {cx+h} x [cy, cy+h/2).
    std::vector<Segment> absorbing = {
        {0, cx + h, cy, cy + hh, 1},        {0, cx + h, cy + hh, cy + h, 2},
        {1, cy + h, cx + hh, cx + h, 3},    {1, cy + h, cx, cx + hh, 4},
        {1, cy + h, cx - hh, cx, 5},        {1, cy + h, cx - h, cx - hh, 6},
        {0, cx - h, cy + hh, cy + h, 7},    {0, cx - h, cy, cy + hh, 8},
        {0, cx - h, cy - hh, cy, 9},        {0, cx - h, cy - h, cy - hh, 10},
        {1, cy - h, cx - h, cx - hh, 11},   {1, cy - h, cx - hh, cx, 12},
        {1, cy - h, cx, cx + hh, 13},       {1, cy - h, cx + hh, cx + h, 14},
        {0, cx + h, cy - h, cy - hh, 15},   {0, cx + h, cy - hh, cy, 16},
    };
    return build_grid_graph(cells, mesh, absorbing);
}

std::vector<std::vector<double>> harmonic_measure_atoms(const CellGraph& g, int nlabels,
                                                        double tol) {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(nlabels) + 1);
    for (int lab = 1; lab <= nlabels; ++lab) {
        DirichletProblem p;
        p.graph = &g;
        p.fixed.assign(g.nodes.size(), -1);
        p.fixed_value = {0.0, 1.0};
        bool seen = false;
        for (int v = 0; v < g.size(); ++v) {
            const auto& nd = g.nodes[static_cast<std::size_t>(v)];
            if (nd.role != NodeRole::Boundary) continue;
            p.fixed[static_cast<std::size_t>(v)] = nd.label == lab ? 1 : 0;
            seen |= nd.label == lab;
        }
        if (!seen) continue;  // atom on a side the carpet does not reach
        auto sol = solve_dirichlet(p, tol);
        if (!sol.stats.converged) throw std::runtime_error("harmonic measure solve failed");
        out[static_cast<std::size_t>(lab)] = std::move(sol.potential);
    }
    return out;
}

HarnackReport harnack_constant(std::int64_t ci, std::int64_t cj, int m, const WeightConfig& cfg,
                               int mesh, double tol) {
    auto g = harnack_domain(ci, cj, m, cfg, mesh);
    auto u = harmonic_measure_atoms(g, 16, tol);

    std::int64_t side = 1;
    for (int p = 0; p < m; ++p) side *= 3;
    const double cx = static_cast<double>(ci * side), cy = static_cast<double>(cj * side);
    const double box = 2.0 / 3.0 * static_cast<double>(side) + 1e-9;

    std::vector<int> probe;
    for (int v = 0; v < g.size(); ++v) {
        const auto& nd = g.nodes[static_cast<std::size_t>(v)];
        if (nd.role != NodeRole::Grid) continue;
        if (std::max(std::abs(nd.x - cx), std::abs(nd.y - cy)) <= box) probe.push_back(v);
    }
    if (probe.empty()) throw std::runtime_error("no grid nodes in the central box");

    HarnackReport rep;
    rep.m = m;
    rep.ci = ci;
    rep.cj = cj;
    rep.mesh = mesh;
    rep.theta = 1.0;
    for (int lab = 1; lab <= 16; ++lab) {
        const auto& pot = u[static_cast<std::size_t>(lab)];
        if (pot.empty()) continue;
        HarnackAtom a;
        a.label = lab;
        a.sup = 0.0;
        a.inf = 1.0;
        for (int v : probe) {
            double val = pot[static_cast<std::size_t>(v)];
            a.sup = std::max(a.sup, val);
            a.inf = std::min(a.inf, val);
        }
        a.degenerate = a.inf <= 1e-12;
        a.ratio = a.degenerate ? 0.0 : a.sup / a.inf;
        if (!a.degenerate) rep.theta = std::max(rep.theta, a.ratio);
        rep.atoms.push_back(a);
    }
    return rep;
}

}  // namespace carpetlab
