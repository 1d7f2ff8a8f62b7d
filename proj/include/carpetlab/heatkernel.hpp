#ifndef CARPETLAB_HEATKERNEL_HPP
#define CARPETLAB_HEATKERNEL_HPP

#include <cstdint>
#include <vector>

#include "carpetlab/graph.hpp"

namespace carpetlab {

// Lazy conductance walk on the level-n cross graph rescaled into [0,1]^2:
// P(x,y) = c(xy)/(2 c(x)) for x != y, P(x,x) = 1/2. Stationary probability
// m(v) = c(v) / sum_w c(w); one step advances the diffusion clock by
// dt = 3^{-n beta}.
struct KernelChain {
    CellGraph graph;  // node coordinates divided by 3^n
    int level = 0;
    double beta = 2.0;
    double dt = 1.0;
    WeightConfig cfg;
    CellGraph::Adjacency adj;
    std::vector<double> cond;  // c(v)
    std::vector<double> m;     // stationary probabilities

    KernelChain() : cfg(1.0) {}
};

KernelChain make_kernel_chain(int n, const WeightConfig& cfg, double beta);

long steps_for_time(const KernelChain& ch, double t);

// Nearest chain node to a point of [0,1]^2.
int chain_node(const KernelChain& ch, Point p);

// Advance a probability distribution by `steps` lazy steps (in place).
void evolve(const KernelChain& ch, std::vector<double>& dist, long steps);

// q_t(x, .) = P^k(x, .) / m(.) with k = steps_for_time(t); exact power
// iteration when samples = 0, Monte Carlo landing histogram otherwise.
std::vector<double> transition_density(const KernelChain& ch, int x, double t,
                                       long samples = 0, std::uint64_t seed = 1);

struct DiagonalEntry {
    double t = 0.0;
    long steps = 0;
    double q = 0.0;        // q_t(x,x)
    double mu_ball = 0.0;  // mu(B(x, t^{1/beta}))
    double profile = 0.0;  // q * mu_ball
};

struct DiagonalProfile {
    std::vector<DiagonalEntry> table;
    double band_lo = 0.0, band_hi = 0.0;  // min/max of the profile
};

// On-diagonal profile q_t(x,x) mu(B(x, t^{1/beta})) over a list of times;
// bounded bands witness the two-sided sub-Gaussian on-diagonal estimate.
DiagonalProfile diagonal_profile(const KernelChain& ch, Point x, const std::vector<double>& ts);

struct RescalingCheck {
    double t = 0.0;  // fine-level time
    long steps = 0;
    double fine = 0.0;    // q^{(n+1)}_t(x, y)
    double coarse = 0.0;  // (4 rho + 4) q^{(n)}_{3^beta t}(3x, 3y)
    double rel_err = 0.0;
};

// Exact self-similarity of the rescaled kernels: both sides use the same
// step count, so the only discrepancy is boundary leakage at the coarse
// level. x, y in [0, 1/3]^2 (fine-level coordinates).
RescalingCheck rescaling_check(const KernelChain& coarse, const KernelChain& fine, Point x,
                               Point y, double t);

struct EnvelopePoint {
    double xi = 0.0;   // (d(x,y)^beta / t)^{1/(beta-1)}
    double val = 0.0;  // log(q_t(x,y) mu(B(x, t^{1/beta})))
};

struct EnvelopeFit {
    double c2 = 0.0;  // common decay rate (= c4)
    double c1 = 0.0, c3 = 0.0;
    std::vector<EnvelopePoint> points;
};

// Sub-Gaussian envelope c1 e^{-c2 xi} <= q mu(B) <= c3 e^{-c2 xi}: the rate
// is the least-squares slope of log(q mu(B)) against xi, the constants the
// extreme offsets. Points with q below `floor` are discarded.
EnvelopeFit envelope_fit(const KernelChain& ch, Point x, const std::vector<double>& ts,
                         double floor = 1e-12);

}  // namespace carpetlab

#endif
