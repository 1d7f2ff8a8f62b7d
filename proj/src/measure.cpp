#include "carpetlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace carpetlab {

namespace {

double dist_norm(double dx, double dy, BallNorm norm) {
    return norm == BallNorm::Euclidean ? std::hypot(dx, dy) : std::max(std::abs(dx), std::abs(dy));
}

// Classify a square against the ball: 1 inside, -1 outside, 0 straddling.
int classify(const Square& q, Point c, double r, BallNorm norm) {
    double cx = std::clamp(c.x, q.x0, q.x0 + q.side);
    double cy = std::clamp(c.y, q.y0, q.y0 + q.side);
    double nearest = dist_norm(cx - c.x, cy - c.y, norm);
    if (nearest > r) return -1;
    double farthest = 0.0;
    for (int ix = 0; ix < 2; ++ix)
        for (int iy = 0; iy < 2; ++iy) {
            double d = dist_norm(q.x0 + ix * q.side - c.x, q.y0 + iy * q.side - c.y, norm);
            farthest = std::max(farthest, d);
        }
    return farthest <= r ? 1 : 0;
}

struct BallAccum {
    Point c;
    double r;
    const WeightConfig* cfg;
    BallNorm norm;
    double tol;
    int depth_cap;
    double inside = 0.0;
    double undecided = 0.0;

    void descend(std::int64_t ci, std::int64_t cj, int level, double mass) {
        double side = std::pow(3.0, -level);
        Square q{ci * side, cj * side, side};
        int cls = classify(q, c, r, norm);
        if (cls < 0) return;
        if (cls > 0) {
            inside += mass;
            return;
        }
        if (level >= depth_cap || mass < 1e-3 * tol) {
            undecided += mass;
            return;
        }
        double norm_mass = cfg->mass_normalizer();
        for (int s = 1; s <= 8; ++s) {
            auto off = similarity_offset(s);
            descend(3 * ci + off[0], 3 * cj + off[1], level + 1,
                    mass * cfg->symbol_weight(s) / norm_mass);
        }
    }
};

}  // namespace

MeasureValue ball_measure(Point x, double r, const WeightConfig& cfg, double tol, BallNorm norm,
                          int depth_cap) {
    if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    BallAccum acc{x, r, &cfg, norm, tol, depth_cap};
    acc.descend(0, 0, 0, 1.0);
    MeasureValue mv;
    mv.mass = acc.inside + 0.5 * acc.undecided;
    mv.error_bound = 0.5 * acc.undecided;
    mv.converged = acc.undecided <= tol * std::max(mv.mass, 1e-300);
    return mv;
}

namespace {

// Area of the intersection of the axis box [x0,x0+s]^2 with the ball.
double cell_ball_area(double x0, double y0, double s, Point c, double r, BallNorm norm,
                      int subdiv) {
    if (norm == BallNorm::Linf) {
        double lx = std::max(x0, c.x - r), hx = std::min(x0 + s, c.x + r);
        double ly = std::max(y0, c.y - r), hy = std::min(y0 + s, c.y + r);
        if (lx >= hx || ly >= hy) return 0.0;
        return (hx - lx) * (hy - ly);
    }
    // Euclidean: midpoint rule on a subdiv x subdiv grid of the cell.
    double h = s / subdiv;
    double area = 0.0;
    for (int a = 0; a < subdiv; ++a)
        for (int b = 0; b < subdiv; ++b) {
            double px = x0 + (a + 0.5) * h, py = y0 + (b + 0.5) * h;
            if (std::hypot(px - c.x, py - c.y) <= r) area += h * h;
        }
    return area;
}

}  // namespace

double precarpet_ball_measure(Point x, double r, const WeightConfig& cfg, BallNorm norm,
                              int subdiv) {
    if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
    auto lo_i = static_cast<std::int64_t>(std::floor(x.x - r));
    auto hi_i = static_cast<std::int64_t>(std::floor(x.x + r));
    auto lo_j = static_cast<std::int64_t>(std::floor(x.y - r));
    auto hi_j = static_cast<std::int64_t>(std::floor(x.y + r));
    double total = 0.0;
    for (std::int64_t i = std::max<std::int64_t>(lo_i, 0); i <= hi_i; ++i)
        for (std::int64_t j = std::max<std::int64_t>(lo_j, 0); j <= hi_j; ++j) {
            if (!precarpet_cell_exists(i, j)) continue;
            double a = cell_ball_area(static_cast<double>(i), static_cast<double>(j), 1.0, x, r,
                                      norm, subdiv);
            if (a > 0.0) total += a * precarpet_cell_weight(i, j, cfg);
        }
    return total;
}

}  // namespace carpetlab
