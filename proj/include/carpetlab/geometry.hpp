#ifndef CARPETLAB_GEOMETRY_HPP
#define CARPETLAB_GEOMETRY_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace carpetlab {

// Address of a carpet cell: a string over {1,...,8}, empty = whole square.
using Word = std::vector<int>;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Cell weights: rho on the edge-midpoint cells (even symbols), 1 on the
// corner cells (odd symbols). Total per-level mass 4+4*rho.
struct WeightConfig {
    double rho = 1.0;

    explicit WeightConfig(double rho_ = 1.0) : rho(rho_) {
        if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
    }

    double symbol_weight(int symbol) const {
        if (symbol < 1 || symbol > 8) throw std::invalid_argument("symbol out of {1..8}");
        return (symbol % 2 == 0) ? rho : 1.0;
    }
    double mass_normalizer() const { return 4.0 + 4.0 * rho; }

    // Hausdorff dimension of the weighted measure's volume growth.
    double alpha() const;
};

// Parse "p/q" or a decimal literal.
double parse_rho(const std::string& s);

// Lower-left translation of the i-th similarity, in units of 1/3.
std::array<int, 2> similarity_offset(int symbol);

// Phi_w(p) = Phi_{w_1} o ... o Phi_{w_n} (p).
Point apply_similarity(const Word& w, Point p);

struct Square {
    double x0 = 0.0, y0 = 0.0;  // lower-left corner
    double side = 1.0;          // integer power of 3
    bool contains(Point p) const {
        return p.x >= x0 && p.x <= x0 + side && p.y >= y0 && p.y <= y0 + side;
    }
};

// The closed square F_w = Phi_w([0,1]^2).
Square cell_square(const Word& w);

// mu(F_w) = rho_w / (4+4 rho)^|w|.
double cell_measure(const Word& w, const WeightConfig& cfg);

// Number of even symbols in w (the exponent of rho in rho_w).
int rho_exponent(const Word& w);

// --- Pre-carpet unit cells -------------------------------------------------
//
// F~_0 is the union of unit squares in the first quadrant whose base-3
// digit pairs never form the removed center (1,1). A cell is identified by
// its integer lower-left corner.

bool precarpet_cell_exists(std::int64_t i, std::int64_t j);

// rho-exponent of the unit cell (i,j): number of digit positions where
// exactly one of the two base-3 digits equals 1.
int precarpet_cell_rho_exponent(std::int64_t i, std::int64_t j);

double precarpet_cell_weight(std::int64_t i, std::int64_t j, const WeightConfig& cfg);

struct WeightedSquare {
    Square square;
    double weight = 0.0;
    Word word;  // address inside F_0^n, when produced by enumeration
};

// All 8^n unit squares of F_0^n = [0,3^n]^2 with weights mu_0(Q) = rho_u.
// Total weight (4+4 rho)^n.
std::vector<WeightedSquare> precarpet_cells(int n, const WeightConfig& cfg, int cap = 8);

// Word of length n addressing the unit cell (i,j) inside F_0^n.
Word precarpet_cell_word(std::int64_t i, std::int64_t j, int n);

enum class NeighborhoodKind { Q, D, G };

// Q_n(x): the 3^n-square containing x (half-open rounding);
// D_n(x): the 2x2 block of 3^n-squares around x;
// G_m(x): the central closed box of side (4/3)*3^m in D_m(x).
Square neighborhood(Point x, int n, NeighborhoodKind kind);

}  // namespace carpetlab

#endif
