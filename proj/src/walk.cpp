#include "carpetlab/walk.hpp"

#include <cmath>
#include <stdexcept>

#include "carpetlab/rng.hpp"
#include "carpetlab/solver.hpp"

namespace carpetlab {

namespace {

// Filled squares per pattern (S_1 is never filled).
const char* filled_of(char pattern) {
    switch (pattern) {
        case 'a': return "234";
        case 'b': return "34";
        case 'c': return "23";
        case 'd': return "4";
        case 'e': return "3";
        case 'f': return "2";
        case 'g': return "";
        default: throw std::invalid_argument("pattern must be one of a..g");
    }
}

double pow3(int m) { return std::pow(3.0, m); }

double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double n = static_cast<double>(xs.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int nearest_interface(const CellGraph& g, Point p) {
    int v = nearest_node(g, p, {NodeRole::Interface});
    if (v < 0) throw std::runtime_error("no interface node near start point");
    return v;
}

}  // namespace

bool square_filled(const SquareConfig& sq, int i) {
    for (const char* f = filled_of(sq.pattern); *f; ++f)
        if (*f - '0' == i) return true;
    return false;
}

SquareConfig make_square_config(char pattern, int m, const WeightConfig& cfg) {
    SquareConfig sq;
    sq.pattern = pattern;
    sq.m = m;
    sq.cfg = cfg;
    const double r = cfg.rho;
    // Concrete pre-carpet instances of each pattern fix the default weights.
    switch (pattern) {
        case 'a': sq.weight = {1, 0, 0, 0}; break;
        case 'b': sq.weight = {1, r, 0, 0}; break;
        case 'c': sq.weight = {1, 0, 0, r}; break;
        case 'd': sq.weight = {1, r, r * r, 0}; break;
        case 'e': sq.weight = {1, r, 0, r}; break;
        case 'f': sq.weight = {r, 0, r, 1}; break;
        case 'g': sq.weight = {r * r, r, 1, r}; break;
        default: throw std::invalid_argument("pattern must be one of a..g");
    }
    return sq;
}

std::vector<CellSpec> square_block_cells(const SquareConfig& sq) {
    static const std::int64_t off[4][2] = {{0, 0}, {-1, 0}, {-1, -1}, {0, -1}};
    std::int64_t side = 1;
    for (int p = 0; p < sq.m; ++p) side *= 3;
    std::vector<CellSpec> out;
    auto base = sq.m == 0 ? std::vector<CellSpec>{{0, 0, 1.0}} : region_square(sq.m, sq.cfg);
    for (int i = 1; i <= 4; ++i) {
        if (square_filled(sq, i)) continue;
        double f = sq.weight[static_cast<std::size_t>(i - 1)];
        for (const auto& c : base)
            out.push_back(CellSpec{c.i + off[i - 1][0] * side, c.j + off[i - 1][1] * side,
                                   c.weight * f});
    }
    return out;
}

HittingDistribution hitting_distribution(const CellGraph& g, int start, int nlabels,
                                         long samples, std::uint64_t seed, double tol,
                                         long step_cap) {
    HittingDistribution hd;
    hd.mass.assign(static_cast<std::size_t>(nlabels) + 1, 0.0);
    hd.se.assign(static_cast<std::size_t>(nlabels) + 1, 0.0);
    hd.samples = samples;

    if (samples == 0) {
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
            if (!seen) continue;  // empty atom (e.g. side of a filled square)
            auto sol = solve_dirichlet(p, tol);
            if (!sol.stats.converged) throw std::runtime_error("harmonic measure solve failed");
            hd.mass[static_cast<std::size_t>(lab)] = sol.potential[static_cast<std::size_t>(start)];
        }
        return hd;
    }

    auto adj = g.adjacency();
    auto cond = g.node_conductance();
    std::vector<long> hits(static_cast<std::size_t>(nlabels) + 1, 0);
    long steps = 0;
    for (long s = 0; s < samples; ++s) {
        CounterRng rng(seed, static_cast<std::uint64_t>(s));
        int v = start;
        for (;;) {
            if (++steps > step_cap) throw std::runtime_error("walk step cap exceeded");
            double u = rng.next_double() * cond[static_cast<std::size_t>(v)];
            int w = -1;
            for (int p = adj.offsets[static_cast<std::size_t>(v)];
                 p < adj.offsets[static_cast<std::size_t>(v) + 1]; ++p) {
                u -= adj.weight[static_cast<std::size_t>(p)];
                if (u <= 0.0) {
                    w = adj.neighbor[static_cast<std::size_t>(p)];
                    break;
                }
            }
            if (w < 0) w = adj.neighbor[static_cast<std::size_t>(adj.offsets[static_cast<std::size_t>(v) + 1] - 1)];
            v = w;
            const auto& nd = g.nodes[static_cast<std::size_t>(v)];
            if (nd.role == NodeRole::Boundary) {
                if (nd.label >= 1 && nd.label <= nlabels)
                    ++hits[static_cast<std::size_t>(nd.label)];
                break;
            }
        }
    }
    for (int lab = 1; lab <= nlabels; ++lab) {
        double p = static_cast<double>(hits[static_cast<std::size_t>(lab)]) /
                   static_cast<double>(samples);
        hd.mass[static_cast<std::size_t>(lab)] = p;
        hd.se[static_cast<std::size_t>(lab)] =
            std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    }
    return hd;
}

CellGraph corner_domain(const SquareConfig& sq, int mesh, int* nlabels) {
    const double h = pow3(sq.m), hh = 0.5 * h;
    bool two = !square_filled(sq, 4);

    SquareConfig dom = sq;
    dom.pattern = two ? 'c' : 'a';  // keep only S_1 (and S_4 when unfilled)
    auto cells = square_block_cells(dom);

    std::vector<Segment> absorbing = {
        {0, h, 0.0, hh, 1},  {0, h, hh, h, 2},  {1, h, hh, h, 3},
        {1, h, 0.0, hh, 4},  {0, 0.0, hh, h, 5}, {0, 0.0, 0.0, hh, 6},
    };
    if (two) {
        absorbing.insert(absorbing.end(), {
            {0, 0.0, -hh, 0.0, 7}, {0, 0.0, -h, -hh, 8}, {1, -h, 0.0, hh, 9},
            {1, -h, hh, h, 10},    {0, h, -h, -hh, 11},  {0, h, -hh, 0.0, 12},
        });
    }
    std::vector<Segment> interfaces = {{1, 0.0, 0.0, h, 100}};
    *nlabels = two ? 12 : 6;
    return build_grid_graph(cells, mesh, absorbing, interfaces);
}

CornerMoveReport corner_move_check(const SquareConfig& sq, const std::vector<double>& xs,
                                   int mesh, double tol) {
    int nlabels = 0;
    auto g = corner_domain(sq, mesh, &nlabels);
    CornerMoveReport rep;
    double w1 = sq.weight[0], w4 = sq.weight[3];
    rep.bound = square_filled(sq, 4) ? 1.0 / 6.0 : w1 / (6.0 * (w1 + w4));
    for (double x : xs) {
        int start = nearest_interface(g, Point{x, 0.0});
        auto hd = hitting_distribution(g, start, nlabels, 0, 1, tol);
        rep.samples.push_back(CornerMoveSample{x, hd.mass[6]});
    }
    return rep;
}

std::vector<QuadrantSample> reflected_quadrant_check(const SquareConfig& sq,
                                                     const std::vector<double>& xs, int mesh,
                                                     double tol) {
    const double h = pow3(sq.m), hh = 0.5 * h;
    SquareConfig dom = sq;
    dom.pattern = 'a';
    auto cells = square_block_cells(dom);
    std::vector<Segment> absorbing = {
        {0, h, 0.0, hh, 1},
        {0, h, hh, h, 2},
        {1, h, hh, h, 3},
        {1, h, 0.0, hh, 4},
    };
    std::vector<Segment> interfaces = {{1, 0.0, 0.0, h, 100}};
    auto g = build_grid_graph(cells, mesh, absorbing, interfaces);
    std::vector<QuadrantSample> out;
    for (double x : xs) {
        int start = nearest_interface(g, Point{x, 0.0});
        auto hd = hitting_distribution(g, start, 4, 0, 1, tol);
        out.push_back(QuadrantSample{x, hd.mass[1]});
    }
    return out;
}

FoldingResult folding_check(const SquareConfig& sq, double x, int label, int mesh, double tol) {
    if (square_filled(sq, 4)) throw std::invalid_argument("folding requires S_4 unfilled");
    if (label < 1 || label > 6) throw std::invalid_argument("indicator label must be in 1..6");

    FoldingResult out;
    int nlabels = 0;
    {
        auto g = corner_domain(sq, mesh, &nlabels);
        int start = nearest_interface(g, Point{x, 0.0});
        auto hd = hitting_distribution(g, start, nlabels, 0, 1, tol);
        out.lhs = hd.mass[static_cast<std::size_t>(label)];
    }
    {
        SquareConfig folded = sq;
        folded.pattern = 'a';
        auto g = corner_domain(folded, mesh, &nlabels);
        int start = nearest_interface(g, Point{x, 0.0});
        auto hd = hitting_distribution(g, start, nlabels, 0, 1, tol);
        double w1 = sq.weight[0], w4 = sq.weight[3];
        out.rhs = w1 / (w1 + w4) * hd.mass[static_cast<std::size_t>(label)];
    }
    return out;
}

std::array<std::array<double, 4>, 4> y_chain_matrix(const SquareConfig& sq) {
    std::array<std::array<double, 4>, 4> p{};
    for (int i = 0; i < 4; ++i) {
        double wi = sq.weight[static_cast<std::size_t>(i)];
        double wp = sq.weight[static_cast<std::size_t>((i + 3) % 4)];  // S_{i-1}
        if (wi + wp == 0.0) continue;
        p[static_cast<std::size_t>(i)][static_cast<std::size_t>((i + 1) % 4)] = wi / (wi + wp);
        p[static_cast<std::size_t>(i)][static_cast<std::size_t>((i + 3) % 4)] = wp / (wi + wp);
    }
    return p;
}

namespace {

CellGraph block_domain(const SquareConfig& sq, int mesh, bool sixteen_labels) {
    const double h = pow3(sq.m), hh = 0.5 * h;
    auto cells = square_block_cells(sq);
    std::vector<Segment> absorbing;
    if (sixteen_labels) {
        absorbing = {
            {0, h, 0.0, hh, 1},    {0, h, hh, h, 2},    {1, h, hh, h, 3},
            {1, h, 0.0, hh, 4},    {1, h, -hh, 0.0, 5}, {1, h, -h, -hh, 6},
            {0, -h, hh, h, 7},     {0, -h, 0.0, hh, 8}, {0, -h, -hh, 0.0, 9},
            {0, -h, -h, -hh, 10},  {1, -h, -h, -hh, 11}, {1, -h, -hh, 0.0, 12},
            {1, -h, 0.0, hh, 13},  {1, -h, hh, h, 14},  {0, h, -h, -hh, 15},
            {0, h, -hh, 0.0, 16},
        };
    } else {
        absorbing = {
            {0, h, -h, h, 0}, {0, -h, -h, h, 0}, {1, h, -h, h, 0}, {1, -h, -h, h, 0},
        };
    }
    std::vector<Segment> arms = {
        {1, 0.0, 0.0, h, 1},
        {0, 0.0, 0.0, h, 2},
        {1, 0.0, -h, 0.0, 3},
        {0, 0.0, -h, 0.0, 4},
    };
    return build_grid_graph(cells, mesh, absorbing, arms);
}

}  // namespace

YChainReport y_chain_simulate(const SquareConfig& sq, long transitions, std::uint64_t seed,
                              int mesh) {
    auto g = block_domain(sq, mesh, false);
    const double h = pow3(sq.m);
    int start = nearest_interface(g, Point{0.5 * h, 0.0});

    auto adj = g.adjacency();
    auto cond = g.node_conductance();

    YChainReport rep;
    rep.expected = y_chain_matrix(sq);
    long total = 0;
    std::uint64_t path = 0;
    int v = start, cur = 1;
    CounterRng rng(seed, path);
    while (total < transitions) {
        double u = rng.next_double() * cond[static_cast<std::size_t>(v)];
        int w = adj.neighbor[static_cast<std::size_t>(adj.offsets[static_cast<std::size_t>(v) + 1] - 1)];
        for (int p = adj.offsets[static_cast<std::size_t>(v)];
             p < adj.offsets[static_cast<std::size_t>(v) + 1]; ++p) {
            u -= adj.weight[static_cast<std::size_t>(p)];
            if (u <= 0.0) {
                w = adj.neighbor[static_cast<std::size_t>(p)];
                break;
            }
        }
        v = w;
        const auto& nd = g.nodes[static_cast<std::size_t>(v)];
        if (nd.role == NodeRole::Boundary) {
            v = start;
            cur = 1;
            rng = CounterRng(seed, ++path);
        } else if (nd.role == NodeRole::Interface && nd.label != cur) {
            ++rep.counts[static_cast<std::size_t>(cur - 1)][static_cast<std::size_t>(nd.label - 1)];
            ++rep.row_total[static_cast<std::size_t>(cur - 1)];
            ++total;
            cur = nd.label;
        }
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (rep.row_total[static_cast<std::size_t>(i)] > 0)
                rep.empirical[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    static_cast<double>(rep.counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) /
                    static_cast<double>(rep.row_total[static_cast<std::size_t>(i)]);
    return rep;
}

KnightMoveReport knight_move_check(const SquareConfig& sq, const std::vector<double>& xs,
                                   int mesh, double tol) {
    auto g = block_domain(sq, mesh, true);
    KnightMoveReport rep;
    rep.min_p1 = 1.0;
    for (double x : xs) {
        int start = nearest_interface(g, Point{x, 0.0});
        auto hd = hitting_distribution(g, start, 16, 0, 1, tol);
        rep.samples.push_back(CornerMoveSample{x, hd.mass[1]});
        rep.min_p1 = std::min(rep.min_p1, hd.mass[1]);
    }
    return rep;
}

ExitTimeReport mean_exit_time(Point x, const std::vector<double>& rs, const WeightConfig& cfg,
                              int mesh, long samples, std::uint64_t seed, double tol) {
    double rmax = 0.0;
    for (double r : rs) rmax = std::max(rmax, r);
    auto cx = static_cast<std::int64_t>(std::llround(x.x + 0.5));
    auto cy = static_cast<std::int64_t>(std::llround(x.y + 0.5));
    auto rad = static_cast<std::int64_t>(std::ceil(rmax)) + 2;
    auto cells = region_box(cx, cy, rad, cfg);
    auto g = build_grid_graph(cells, mesh);
    int start = nearest_node(g, x, {NodeRole::Grid});
    if (start < 0) throw std::runtime_error("start point outside the pre-carpet");

    ExitTimeReport rep;
    auto inside = [&](int v, double r) {
        const auto& nd = g.nodes[static_cast<std::size_t>(v)];
        return std::max(std::abs(nd.x - x.x), std::abs(nd.y - x.y)) < r;
    };

    if (samples == 0) {
        for (double r : rs) {
            DirichletProblem p;
            p.graph = &g;
            p.fixed.assign(g.nodes.size(), -1);
            p.fixed_value = {0.0};
            p.source.assign(g.nodes.size(), 0.0);
            for (int v = 0; v < g.size(); ++v) {
                if (!inside(v, r))
                    p.fixed[static_cast<std::size_t>(v)] = 0;
                else
                    p.source[static_cast<std::size_t>(v)] = g.nodes[static_cast<std::size_t>(v)].mass;
            }
            auto sol = solve_dirichlet(p, tol);
            if (!sol.stats.converged) throw std::runtime_error("exit-time solve failed");
            rep.table.push_back(ExitTimeEntry{r, sol.potential[static_cast<std::size_t>(start)], 0.0});
        }
    } else {
        auto adj = g.adjacency();
        auto cond = g.node_conductance();
        for (double r : rs) {
            double sum = 0.0, sum2 = 0.0;
            for (long s = 0; s < samples; ++s) {
                CounterRng rng(seed, static_cast<std::uint64_t>(s));
                int v = start;
                double t = 0.0;
                while (inside(v, r)) {
                    t += g.nodes[static_cast<std::size_t>(v)].mass / cond[static_cast<std::size_t>(v)];
                    double u = rng.next_double() * cond[static_cast<std::size_t>(v)];
                    int w = adj.neighbor[static_cast<std::size_t>(adj.offsets[static_cast<std::size_t>(v) + 1] - 1)];
                    for (int p = adj.offsets[static_cast<std::size_t>(v)];
                         p < adj.offsets[static_cast<std::size_t>(v) + 1]; ++p) {
                        u -= adj.weight[static_cast<std::size_t>(p)];
                        if (u <= 0.0) {
                            w = adj.neighbor[static_cast<std::size_t>(p)];
                            break;
                        }
                    }
                    v = w;
                }
                sum += t;
                sum2 += t * t;
            }
            double mean = sum / static_cast<double>(samples);
            double var = sum2 / static_cast<double>(samples) - mean * mean;
            rep.table.push_back(ExitTimeEntry{r, mean,
                                              std::sqrt(std::max(var, 0.0) /
                                                        static_cast<double>(samples))});
        }
    }

    std::vector<double> lx, ly;
    for (const auto& e : rep.table) {
        lx.push_back(std::log(e.r));
        ly.push_back(std::log(e.mean));
    }
    if (lx.size() >= 2) rep.exponent = ls_slope(lx, ly);
    return rep;
}

}  // namespace carpetlab
