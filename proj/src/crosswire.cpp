#include "carpetlab/crosswire.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "carpetlab/resistance.hpp"
#include "carpetlab/solver.hpp"

namespace carpetlab {

namespace {

std::int64_t pack2(std::int64_t a, std::int64_t b) { return (a << 27) ^ b; }

std::unordered_map<std::int64_t, int> coord_index(const CellGraph& g, int mesh) {
    std::unordered_map<std::int64_t, int> m;
    m.reserve(g.nodes.size());
    for (int v = 0; v < g.size(); ++v) {
        const auto& nd = g.nodes[static_cast<std::size_t>(v)];
        m[pack2(std::llround(nd.x * 2 * mesh), std::llround(nd.y * 2 * mesh))] = v;
    }
    return m;
}

std::vector<int> compose(const std::vector<int>& first, const std::vector<int>& then) {
    std::vector<int> out(first.size());
    for (std::size_t v = 0; v < first.size(); ++v)
        out[v] = then[static_cast<std::size_t>(first[v])];
    return out;
}

}  // namespace

std::vector<int> node_permutation(const CellGraph& g, double (*fx)(double, double, double),
                                  double (*fy)(double, double, double), double width, int mesh) {
    auto index = coord_index(g, mesh);
    std::vector<int> perm(g.nodes.size());
    for (int v = 0; v < g.size(); ++v) {
        const auto& nd = g.nodes[static_cast<std::size_t>(v)];
        double nx = fx(nd.x, nd.y, width), ny = fy(nd.x, nd.y, width);
        auto it = index.find(pack2(std::llround(nx * 2 * mesh), std::llround(ny * 2 * mesh)));
        if (it == index.end()) throw std::runtime_error("coordinate map is not an automorphism");
        perm[static_cast<std::size_t>(v)] = it->second;
    }
    return perm;
}

std::vector<double> transport_flow(const CellGraph& g, const std::vector<int>& perm,
                                   const std::vector<double>& flow) {
    std::unordered_map<std::int64_t, int> edge_of;
    edge_of.reserve(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        int a = g.edges[e].u, b = g.edges[e].v;
        edge_of[pack2(std::min(a, b), std::max(a, b))] = static_cast<int>(e);
    }
    std::vector<double> out(flow.size(), 0.0);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        int a = perm[static_cast<std::size_t>(g.edges[e].u)];
        int b = perm[static_cast<std::size_t>(g.edges[e].v)];
        auto it = edge_of.find(pack2(std::min(a, b), std::max(a, b)));
        if (it == edge_of.end()) throw std::runtime_error("edge image missing under permutation");
        auto ei = static_cast<std::size_t>(it->second);
        double sign = g.edges[ei].u == a ? 1.0 : -1.0;
        out[ei] = sign * flow[e];
    }
    return out;
}

std::vector<double> transport_potential(const std::vector<int>& perm,
                                        const std::vector<double>& u) {
    std::vector<double> out(u.size());
    for (std::size_t v = 0; v < u.size(); ++v) out[static_cast<std::size_t>(perm[v])] = u[v];
    return out;
}

double edge_flow_energy(const CellGraph& g, const std::vector<double>& flow) {
    double e = 0.0;
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        e += flow[i] * flow[i] / g.edges[i].conductance;
    return e;
}

double crosswire_flux(const CrosswireContext& ctx, const std::vector<double>& flow, int k) {
    std::vector<double> div(ctx.graph.nodes.size(), 0.0);
    for (std::size_t e = 0; e < ctx.graph.edges.size(); ++e) {
        div[static_cast<std::size_t>(ctx.graph.edges[e].u)] += flow[e];
        div[static_cast<std::size_t>(ctx.graph.edges[e].v)] -= flow[e];
    }
    double s = 0.0;
    for (int v : ctx.side[static_cast<std::size_t>(k - 1)]) s += div[static_cast<std::size_t>(v)];
    return s;
}

namespace {

std::vector<double> lin(double a, const std::vector<double>& x, double b,
                        const std::vector<double>& y) {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
    return out;
}

int cyc(int i) { return (i - 1) % 4 + 1; }  // wrap 1..4 for i in 1..6

std::vector<double> restrict_to(const CrosswireContext& ctx, const std::vector<double>& flow,
                                int tri) {
    std::vector<double> out(flow.size());
    for (std::size_t e = 0; e < flow.size(); ++e)
        out[e] = flow[e] * ctx.tri_weight[e][static_cast<std::size_t>(tri - 1)];
    return out;
}

}  // namespace

CrosswireContext make_crosswire_context(int n, const WeightConfig& cfg, int mesh, double tol) {
    CrosswireContext ctx;
    ctx.level = n;
    ctx.mesh = mesh;
    ctx.width = std::pow(3.0, n);
    const double w = ctx.width;

    std::vector<Segment> sides = {
        {1, 0.0, 0.0, w, 1},  // bottom, L_1
        {0, w, 0.0, w, 2},    // right, L_2
        {1, w, 0.0, w, 3},    // top, L_3
        {0, 0.0, 0.0, w, 4},  // left, L_4
    };
    ctx.graph = build_grid_graph(region_square(n, cfg), mesh, sides);
    const CellGraph& g = ctx.graph;
    for (int v = 0; v < g.size(); ++v) {
        const auto& nd = g.nodes[static_cast<std::size_t>(v)];
        if (nd.role == NodeRole::Boundary)
            ctx.side[static_cast<std::size_t>(nd.label - 1)].push_back(v);
    }

    ctx.rot = node_permutation(
        g, [](double, double y, double wd) { return wd - y; },
        [](double x, double, double) { return x; }, w, mesh);
    ctx.refl_h = node_permutation(
        g, [](double x, double, double) { return x; },
        [](double, double y, double wd) { return wd - y; }, w, mesh);
    ctx.refl_d = node_permutation(
        g, [](double, double y, double) { return y; },
        [](double x, double, double) { return x; }, w, mesh);

    // Triangle weights by edge midpoint; straddlers split evenly.
    ctx.tri_weight.assign(g.edges.size(), {0.0, 0.0, 0.0, 0.0});
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& a = g.nodes[static_cast<std::size_t>(g.edges[e].u)];
        const auto& b = g.nodes[static_cast<std::size_t>(g.edges[e].v)];
        // 4x scale keeps midpoints integral.
        auto dx = std::llround((a.x + b.x) * 2 * mesh) - std::llround(4.0 * mesh * w / 2);
        auto dy = std::llround((a.y + b.y) * 2 * mesh) - std::llround(4.0 * mesh * w / 2);
        bool in[4] = {dy <= -std::llabs(dx), dx >= std::llabs(dy), dy >= std::llabs(dx),
                      dx <= -std::llabs(dy)};
        int hits = in[0] + in[1] + in[2] + in[3];
        for (int t = 0; t < 4; ++t)
            if (in[t]) ctx.tri_weight[e][static_cast<std::size_t>(t)] = 1.0 / hits;
    }

    // Base potential: 0 on L_4, 1 on L_2, reflecting elsewhere.
    BoundarySpec b;
    b.b0 = ctx.side[3];
    b.b1 = ctx.side[1];
    auto sol = effective_resistance(g, b, tol);
    ctx.potential_energy = sol.energy;
    ctx.residual = sol.residual;

    // Symmetrize the potential over the symmetries fixing the problem:
    // refl_h and (1 - u) o rot^2.
    auto rot2 = compose(ctx.rot, ctx.rot);
    auto u1 = lin(0.5, sol.potential, 0.5, transport_potential(ctx.refl_h, sol.potential));
    {
        auto ru = transport_potential(rot2, u1);
        for (std::size_t v = 0; v < u1.size(); ++v) u1[v] = 0.5 * (u1[v] + 1.0 - ru[v]);
    }
    ctx.u_pot[0] = u1;
    for (int i = 1; i < 4; ++i)
        ctx.u_pot[static_cast<std::size_t>(i)] =
            transport_potential(ctx.rot, ctx.u_pot[static_cast<std::size_t>(i - 1)]);

    // Unit flow from the symmetrized potential, then full symmetrization so
    // that refl_h fixes it and refl_v / rot^2 negate it exactly.
    double r_pot = 1.0 / sol.energy;
    std::vector<double> base(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        base[e] = r_pot * g.edges[e].conductance *
                  (u1[static_cast<std::size_t>(g.edges[e].u)] -
                   u1[static_cast<std::size_t>(g.edges[e].v)]);
    // u1 drops from L_4 (=0 side? no: 0 on L_4, 1 on L_2) - orient so the
    // flow injects at L_4: current runs from high to low potential, i.e.
    // from L_2 to L_4; negate to inject at L_4.
    for (auto& x : base) x = -x;

    auto i42 = lin(0.5, base, 0.5, transport_flow(g, ctx.refl_h, base));
    i42 = lin(0.5, i42, -0.5, transport_flow(g, rot2, i42));
    ctx.resistance = edge_flow_energy(g, i42);

    auto set = [&](int i, int j, std::vector<double> f) {
        ctx.unit_flow[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
            std::move(f);
    };
    auto& uf = ctx.unit_flow;
    auto get = [&](int i, int j) -> const std::vector<double>& {
        return uf[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    };

    set(4, 2, i42);
    set(1, 3, transport_flow(g, ctx.rot, get(4, 2)));
    set(2, 4, transport_flow(g, ctx.rot, get(1, 3)));
    set(3, 1, transport_flow(g, ctx.rot, get(2, 4)));

    // I^{41} = U^1 - U^4 + V^2 + V^3 with U^i = I^{(i+2)i}|T_i and
    // V^i = I^{(i+1)(i-1)}|T_i; remaining adjacent flows by rotation and
    // the diagonal reflection.
    auto U = [&](int i) { return restrict_to(ctx, get(cyc(i + 2), i), i); };
    auto V = [&](int i) { return restrict_to(ctx, get(cyc(i + 1), cyc(i + 3)), i); };
    auto i41 = lin(1.0, U(1), -1.0, U(4));
    i41 = lin(1.0, i41, 1.0, V(2));
    i41 = lin(1.0, i41, 1.0, V(3));
    set(4, 1, i41);
    set(1, 2, transport_flow(g, ctx.rot, get(4, 1)));
    set(2, 3, transport_flow(g, ctx.rot, get(1, 2)));
    set(3, 4, transport_flow(g, ctx.rot, get(2, 3)));
    set(1, 4, transport_flow(g, ctx.refl_d, get(4, 1)));
    set(2, 1, transport_flow(g, ctx.rot, get(1, 4)));
    set(3, 2, transport_flow(g, ctx.rot, get(2, 1)));
    set(4, 3, transport_flow(g, ctx.rot, get(3, 2)));
    return ctx;
}

double crosswire_eplus(const std::array<double, 4>& h) {
    double s = 0.0;
    for (double x : h) s += x * x;
    return 0.5 * s;
}

std::vector<double> crosswire_compose(const CrosswireContext& ctx,
                                      const std::array<double, 4>& h) {
    double sum = h[0] + h[1] + h[2] + h[3];
    double habs = 0.5 * (std::abs(h[0]) + std::abs(h[1]) + std::abs(h[2]) + std::abs(h[3]));
    if (habs == 0.0) throw std::invalid_argument("H must not vanish identically");
    if (std::abs(sum) > 1e-12 * habs) throw std::invalid_argument("H must sum to zero");

    std::vector<double> j(ctx.graph.edges.size(), 0.0);
    for (int a = 1; a <= 4; ++a) {
        double hp = std::max(h[static_cast<std::size_t>(a - 1)], 0.0);
        if (hp == 0.0) continue;
        for (int b2 = 1; b2 <= 4; ++b2) {
            if (b2 == a) continue;
            double hm = std::max(-h[static_cast<std::size_t>(b2 - 1)], 0.0);
            if (hm == 0.0) continue;
            const auto& f =
                ctx.unit_flow[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b2 - 1)];
            double coef = hp * hm / habs;
            for (std::size_t e = 0; e < j.size(); ++e) j[e] += coef * f[e];
        }
    }
    return j;
}

ComposedPotential compose_potential(const CrosswireContext& ctx, const std::array<double, 4>& z) {
    const CellGraph& g = ctx.graph;
    double zbar = 0.25 * (z[0] + z[1] + z[2] + z[3]);
    ComposedPotential out;
    out.values.assign(g.nodes.size(), 0.0);
    auto c_scaled = std::llround(2.0 * ctx.mesh * ctx.width);  // center at 2*mesh scale
    for (int v = 0; v < g.size(); ++v) {
        const auto& nd = g.nodes[static_cast<std::size_t>(v)];
        auto dx = 2 * std::llround(nd.x * 2 * ctx.mesh) - c_scaled;
        auto dy = 2 * std::llround(nd.y * 2 * ctx.mesh) - c_scaled;
        bool in[4] = {dy <= -std::llabs(dx), dx >= std::llabs(dy), dy >= std::llabs(dx),
                      dx <= -std::llabs(dy)};
        double acc = 0.0;
        int hits = 0;
        for (int i = 1; i <= 4; ++i) {
            if (!in[i - 1]) continue;
            double zi = z[static_cast<std::size_t>(i - 1)];
            double zn = z[static_cast<std::size_t>(cyc(i + 1) - 1)];
            double vi = ctx.u_pot[static_cast<std::size_t>(cyc(i + 1) - 1)][static_cast<std::size_t>(v)];
            double wi = ctx.u_pot[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(v)];
            acc += zi + (2.0 * zbar - zi - zn) * vi + (zn - zi) * wi;
            ++hits;
        }
        out.values[static_cast<std::size_t>(v)] = acc / hits;
    }
    double e = 0.0;
    for (const auto& ed : g.edges) {
        double d = out.values[static_cast<std::size_t>(ed.u)] -
                   out.values[static_cast<std::size_t>(ed.v)];
        e += ed.conductance * d * d;
    }
    out.energy = e;
    return out;
}

}  // namespace carpetlab
