#ifndef CARPETLAB_MEASURE_HPP
#define CARPETLAB_MEASURE_HPP

#include "carpetlab/geometry.hpp"

namespace carpetlab {

enum class BallNorm { Euclidean, Linf };

struct MeasureValue {
    double mass = 0.0;
    double error_bound = 0.0;  // total mass of undecided cells at the depth cap
    bool converged = true;
};

// mu(B(x,r) \cap F) by recursive cell decomposition of the carpet: cells
// fully inside the ball are counted, cells outside discarded, straddling
// cells subdivided until their total mass is below tol * mass (or the depth
// cap is hit, in which case the achieved bound is reported).
MeasureValue ball_measure(Point x, double r, const WeightConfig& cfg, double tol = 1e-6,
                          BallNorm norm = BallNorm::Euclidean, int depth_cap = 12);

// mu_0(B(x,r)) on the pre-carpet: sum over unit cells of weight times the
// area of the intersection of the cell with the ball. Exact for Linf balls;
// straddling cells are subdivided for Euclidean balls.
double precarpet_ball_measure(Point x, double r, const WeightConfig& cfg,
                              BallNorm norm = BallNorm::Linf, int subdiv = 64);

}  // namespace carpetlab

#endif
