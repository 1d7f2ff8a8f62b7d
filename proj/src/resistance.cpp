#include "carpetlab/resistance.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "carpetlab/measure.hpp"

namespace carpetlab {

std::vector<int> nodes_on_line(const CellGraph& g, int axis, double coord, double eps) {
    std::vector<int> out;
    for (int v = 0; v < g.size(); ++v) {
        double c = axis == 0 ? g.nodes[static_cast<std::size_t>(v)].x
                             : g.nodes[static_cast<std::size_t>(v)].y;
        if (std::abs(c - coord) <= eps) out.push_back(v);
    }
    return out;
}

PotentialSolution effective_resistance(const CellGraph& g, const BoundarySpec& b, double tol) {
    if (b.b0.empty() || b.b1.empty()) throw std::invalid_argument("empty boundary set");
    DirichletProblem p;
    p.graph = &g;
    p.fixed.assign(g.nodes.size(), -1);
    p.fixed_value = {0.0, 1.0};
    for (int v : b.b0) p.fixed[static_cast<std::size_t>(v)] = 0;
    for (int v : b.b1) p.fixed[static_cast<std::size_t>(v)] = 1;
    auto sol = solve_dirichlet(p, tol);
    if (!sol.stats.converged)
        throw std::runtime_error("conjugate gradient did not converge after " +
                                 std::to_string(sol.stats.iterations) + " iterations");
    PotentialSolution out;
    out.potential = std::move(sol.potential);
    out.energy = dirichlet_energy(g, out.potential);
    if (!(out.energy > 0.0)) throw std::runtime_error("boundary sets are disconnected");
    out.resistance = 1.0 / out.energy;
    out.residual = sol.stats.residual;
    out.iterations = sol.stats.iterations;
    return out;
}

Flow potential_to_flow(const CellGraph& g, const PotentialSolution& sol, const BoundarySpec& b) {
    Flow f;
    f.current.resize(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& ed = g.edges[e];
        f.current[e] = sol.resistance * ed.conductance *
                       (sol.potential[static_cast<std::size_t>(ed.u)] -
                        sol.potential[static_cast<std::size_t>(ed.v)]);
    }
    f.source = b.b1;  // current flows from potential 1 down to 0
    f.sink = b.b0;
    return f;
}

double flow_energy(const CellGraph& g, const Flow& f) {
    double e = 0.0;
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        e += f.current[i] * f.current[i] / g.edges[i].conductance;
    return e;
}

std::vector<double> flow_divergence(const CellGraph& g, const Flow& f) {
    std::vector<double> div(g.nodes.size(), 0.0);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        div[static_cast<std::size_t>(g.edges[i].u)] += f.current[i];
        div[static_cast<std::size_t>(g.edges[i].v)] -= f.current[i];
    }
    return div;
}

double flux(const CellGraph& g, const Flow& f, const std::vector<int>& node_set) {
    auto div = flow_divergence(g, f);
    double s = 0.0;
    for (int v : node_set) s += div[static_cast<std::size_t>(v)];
    return s;
}

double res(const CellGraph& g, const std::vector<int>& a, const std::vector<int>& omega,
           double tol) {
    if (a.empty()) throw std::invalid_argument("empty inner set");
    std::unordered_set<int> in_omega(omega.begin(), omega.end());
    for (int v : a)
        if (!in_omega.count(v)) throw std::invalid_argument("A must be contained in Omega");
    DirichletProblem p;
    p.graph = &g;
    p.fixed.assign(g.nodes.size(), -1);
    p.fixed_value = {0.0, 1.0};
    for (int v = 0; v < g.size(); ++v)
        if (!in_omega.count(v)) p.fixed[static_cast<std::size_t>(v)] = 0;
    for (int v : a) p.fixed[static_cast<std::size_t>(v)] = 1;
    auto sol = solve_dirichlet(p, tol);
    if (!sol.stats.converged) throw std::runtime_error("res solve did not converge");
    double energy = dirichlet_energy(g, sol.potential);
    if (!(energy > 0.0)) throw std::runtime_error("A is not separated from the complement");
    return 1.0 / energy;
}

AnnulusResult annulus_resistance(std::int64_t cx, std::int64_t cy, int n, int k,
                                 const WeightConfig& cfg, double tol, int mesh) {
    std::int64_t s = 1;
    for (int p = 0; p < n; ++p) s *= 3;
    std::int64_t ro = (k + 1) * s, ri = k * s;
    if (cx - ro < 0 || cy - ro < 0) throw std::invalid_argument("annulus escapes the quadrant");
    auto cells = region_box(cx, cy, ro, cfg);

    double xc = static_cast<double>(cx), yc = static_cast<double>(cy);
    double r = static_cast<double>(ro);
    std::vector<Segment> outer = {
        {0, xc - r, yc - r, yc + r, 0},
        {0, xc + r, yc - r, yc + r, 0},
        {1, yc - r, xc - r, xc + r, 0},
        {1, yc + r, xc - r, xc + r, 0},
    };
    auto g = build_grid_graph(cells, mesh, outer);

    std::vector<int> a;
    double rin = static_cast<double>(ri) + 1e-9;
    for (int v = 0; v < g.size(); ++v) {
        const auto& nd = g.nodes[static_cast<std::size_t>(v)];
        if (nd.role != NodeRole::Grid) continue;
        if (std::abs(nd.x - xc) <= rin && std::abs(nd.y - yc) <= rin) a.push_back(v);
    }
    BoundarySpec b;
    b.b1 = a;
    for (int v = 0; v < g.size(); ++v)
        if (g.nodes[static_cast<std::size_t>(v)].role == NodeRole::Boundary) b.b0.push_back(v);
    auto sol = effective_resistance(g, b, tol);

    AnnulusResult out;
    out.resistance = sol.resistance;
    out.mu_inner = precarpet_ball_measure(Point{xc, yc}, static_cast<double>(s), cfg,
                                          BallNorm::Linf);
    return out;
}

namespace {

PotentialSolution lr_resistance(const CellGraph& g, double width, double tol) {
    BoundarySpec b;
    b.b0 = nodes_on_line(g, 0, 0.0);      // L_4
    b.b1 = nodes_on_line(g, 0, width);    // L_2
    return effective_resistance(g, b, tol);
}

}  // namespace

PotentialSolution cross_graph_resistance(int n, const WeightConfig& cfg, double tol) {
    auto g = build_cross_graph(n, cfg);
    return lr_resistance(g, std::pow(3.0, n), tol);
}

PotentialSolution diag_graph_resistance(int n, const WeightConfig& cfg, double tol) {
    auto g = build_diag_graph(n, cfg);
    return lr_resistance(g, std::pow(3.0, n), tol);
}

PotentialSolution grid_resistance(int n, const WeightConfig& cfg, int mesh, double tol) {
    double w = std::pow(3.0, n);
    std::vector<Segment> sides = {
        {0, 0.0, 0.0, w, 4},
        {0, w, 0.0, w, 2},
    };
    auto g = build_grid_graph(region_square(n, cfg), mesh, sides);
    BoundarySpec b;
    for (int v = 0; v < g.size(); ++v) {
        const auto& nd = g.nodes[static_cast<std::size_t>(v)];
        if (nd.role != NodeRole::Boundary) continue;
        (nd.label == 4 ? b.b0 : b.b1).push_back(v);
    }
    return effective_resistance(g, b, tol);
}

}  // namespace carpetlab
