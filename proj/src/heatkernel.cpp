#include "carpetlab/heatkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "carpetlab/measure.hpp"
#include "carpetlab/rng.hpp"

namespace carpetlab {

namespace {

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

void lazy_step(const KernelChain& ch, const std::vector<double>& in, std::vector<double>& out) {
    out.assign(in.size(), 0.0);
    for (std::size_t v = 0; v < in.size(); ++v) {
        double a = in[v];
        if (a == 0.0) continue;
        out[v] += 0.5 * a;
        double s = 0.5 * a / ch.cond[v];
        for (int p = ch.adj.offsets[v]; p < ch.adj.offsets[v + 1]; ++p)
            out[static_cast<std::size_t>(ch.adj.neighbor[static_cast<std::size_t>(p)])] +=
                s * ch.adj.weight[static_cast<std::size_t>(p)];
    }
}

// Distribution after `steps` lazy steps from delta_x, divided by m.
std::vector<double> density_after(const KernelChain& ch, int x, long steps) {
    std::vector<double> dist(ch.graph.nodes.size(), 0.0);
    dist[static_cast<std::size_t>(x)] = 1.0;
    evolve(ch, dist, steps);
    for (std::size_t v = 0; v < dist.size(); ++v) dist[v] /= ch.m[v];
    return dist;
}

}  // namespace

KernelChain make_kernel_chain(int n, const WeightConfig& cfg, double beta) {
    KernelChain ch;
    ch.graph = build_cross_graph(n, cfg);
    ch.level = n;
    ch.beta = beta;
    ch.cfg = cfg;
    ch.dt = std::pow(3.0, -beta * n);
    double scale = std::pow(3.0, -n);
    for (auto& nd : ch.graph.nodes) {
        nd.x *= scale;
        nd.y *= scale;
    }
    ch.adj = ch.graph.adjacency();
    ch.cond = ch.graph.node_conductance();
    double total = std::accumulate(ch.cond.begin(), ch.cond.end(), 0.0);
    ch.m = ch.cond;
    for (auto& v : ch.m) v /= total;
    return ch;
}

long steps_for_time(const KernelChain& ch, double t) {
    return std::max<long>(1, std::lround(t / ch.dt));
}

int chain_node(const KernelChain& ch, Point p) {
    return nearest_node(ch.graph, p);
}

void evolve(const KernelChain& ch, std::vector<double>& dist, long steps) {
    std::vector<double> buf(dist.size());
    for (long s = 0; s < steps; ++s) {
        lazy_step(ch, dist, buf);
        dist.swap(buf);
    }
}

std::vector<double> transition_density(const KernelChain& ch, int x, double t, long samples,
                                       std::uint64_t seed) {
    long k = steps_for_time(ch, t);
    if (samples == 0) return density_after(ch, x, k);

    std::vector<long> hits(ch.graph.nodes.size(), 0);
    for (long s = 0; s < samples; ++s) {
        CounterRng rng(seed, static_cast<std::uint64_t>(s));
        int v = x;
        for (long step = 0; step < k; ++step) {
            double u = rng.next_double() * 2.0 * ch.cond[static_cast<std::size_t>(v)];
            if (u >= ch.cond[static_cast<std::size_t>(v)]) continue;  // lazy half
            int w = v;
            for (int p = ch.adj.offsets[static_cast<std::size_t>(v)];
                 p < ch.adj.offsets[static_cast<std::size_t>(v) + 1]; ++p) {
                u -= ch.adj.weight[static_cast<std::size_t>(p)];
                if (u <= 0.0) {
                    w = ch.adj.neighbor[static_cast<std::size_t>(p)];
                    break;
                }
            }
            v = w;
        }
        ++hits[static_cast<std::size_t>(v)];
    }
    std::vector<double> q(ch.graph.nodes.size(), 0.0);
    for (std::size_t v = 0; v < q.size(); ++v)
        q[v] = static_cast<double>(hits[v]) / static_cast<double>(samples) / ch.m[v];
    return q;
}

DiagonalProfile diagonal_profile(const KernelChain& ch, Point x, const std::vector<double>& ts) {
    int v = chain_node(ch, x);
    if (v < 0) throw std::runtime_error("no chain node near x");
    Point xc{ch.graph.nodes[static_cast<std::size_t>(v)].x,
             ch.graph.nodes[static_cast<std::size_t>(v)].y};

    std::vector<double> sorted = ts;
    std::sort(sorted.begin(), sorted.end());

    DiagonalProfile out;
    std::vector<double> dist(ch.graph.nodes.size(), 0.0);
    dist[static_cast<std::size_t>(v)] = 1.0;
    long done = 0;
    for (double t : sorted) {
        long k = steps_for_time(ch, t);
        evolve(ch, dist, k - done);
        done = k;
        DiagonalEntry e;
        e.t = t;
        e.steps = k;
        e.q = dist[static_cast<std::size_t>(v)] / ch.m[static_cast<std::size_t>(v)];
        e.mu_ball = ball_measure(xc, std::pow(t, 1.0 / ch.beta), ch.cfg).mass;
        e.profile = e.q * e.mu_ball;
        out.table.push_back(e);
    }
    out.band_lo = out.band_hi = out.table.front().profile;
    for (const auto& e : out.table) {
        out.band_lo = std::min(out.band_lo, e.profile);
        out.band_hi = std::max(out.band_hi, e.profile);
    }
    return out;
}

RescalingCheck rescaling_check(const KernelChain& coarse, const KernelChain& fine, Point x,
                               Point y, double t) {
    RescalingCheck out;
    out.t = t;
    out.steps = steps_for_time(fine, t);

    int fx = chain_node(fine, x), fy = chain_node(fine, y);
    auto qf = density_after(fine, fx, out.steps);
    out.fine = qf[static_cast<std::size_t>(fy)];

    // The coarse chain runs the same number of steps: dt_n = 3^beta dt_{n+1}.
    Point xc{3.0 * fine.graph.nodes[static_cast<std::size_t>(fx)].x,
             3.0 * fine.graph.nodes[static_cast<std::size_t>(fx)].y};
    Point yc{3.0 * fine.graph.nodes[static_cast<std::size_t>(fy)].x,
             3.0 * fine.graph.nodes[static_cast<std::size_t>(fy)].y};
    int cx = chain_node(coarse, xc), cy = chain_node(coarse, yc);
    auto qc = density_after(coarse, cx, out.steps);
    out.coarse = (4.0 * coarse.cfg.rho + 4.0) * qc[static_cast<std::size_t>(cy)];

    double ref = std::max(std::abs(out.fine), std::abs(out.coarse));
    out.rel_err = ref > 0.0 ? std::abs(out.fine - out.coarse) / ref : 0.0;
    return out;
}

EnvelopeFit envelope_fit(const KernelChain& ch, Point x, const std::vector<double>& ts,
                         double floor) {
    int v = chain_node(ch, x);
    if (v < 0) throw std::runtime_error("no chain node near x");
    Point xc{ch.graph.nodes[static_cast<std::size_t>(v)].x,
             ch.graph.nodes[static_cast<std::size_t>(v)].y};

    std::vector<double> sorted = ts;
    std::sort(sorted.begin(), sorted.end());

    EnvelopeFit out;
    std::vector<double> dist(ch.graph.nodes.size(), 0.0);
    dist[static_cast<std::size_t>(v)] = 1.0;
    long done = 0;
    for (double t : sorted) {
        long k = steps_for_time(ch, t);
        evolve(ch, dist, k - done);
        done = k;
        double mu_ball = ball_measure(xc, std::pow(t, 1.0 / ch.beta), ch.cfg).mass;
        double scale = std::pow(3.0, ch.level);
        for (std::size_t w = 0; w < dist.size(); ++w) {
            double q = dist[w] / ch.m[w];
            if (q < floor) continue;
            const auto& nd = ch.graph.nodes[w];
            double d = std::hypot(nd.x - xc.x, nd.y - xc.y);
            // Validity window of the estimate: 3^{n beta} t >= 1 v 3^n |x-y|.
            if (std::pow(3.0, ch.beta * ch.level) * t < std::max(1.0, scale * d)) continue;
            double xi = std::pow(std::pow(d, ch.beta) / t, 1.0 / (ch.beta - 1.0));
            out.points.push_back(EnvelopePoint{xi, std::log(q * mu_ball)});
        }
    }
    if (out.points.size() < 2) throw std::runtime_error("too few envelope points");

    std::vector<double> xs, ys;
    for (const auto& p : out.points) {
        xs.push_back(p.xi);
        ys.push_back(p.val);
    }
    out.c2 = -ls_slope(xs, ys);
    double lo = ys.front() + out.c2 * xs.front(), hi = lo;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double off = ys[i] + out.c2 * xs[i];
        lo = std::min(lo, off);
        hi = std::max(hi, off);
    }
    out.c1 = std::exp(lo);
    out.c3 = std::exp(hi);
    return out;
}

}  // namespace carpetlab
