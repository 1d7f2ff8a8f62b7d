#include "carpetlab/geometry.hpp"

#include <cmath>
#include <cstdlib>

namespace carpetlab {

double WeightConfig::alpha() const { return std::log(mass_normalizer()) / std::log(3.0); }

double parse_rho(const std::string& s) {
    auto slash = s.find('/');
    double v;
    if (slash == std::string::npos) {
        std::size_t pos = 0;
        v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("bad rho: " + s);
    } else {
        double p = std::stod(s.substr(0, slash));
        double q = std::stod(s.substr(slash + 1));
        if (q == 0.0) throw std::invalid_argument("bad rho: " + s);
        v = p / q;
    }
    if (!(v > 0.0)) throw std::invalid_argument("rho must be positive");
    return v;
}

std::array<int, 2> similarity_offset(int symbol) {
    switch (symbol) {
        case 1: return {0, 0};
        case 2: return {1, 0};
        case 3: return {2, 0};
        case 4: return {2, 1};
        case 5: return {2, 2};
        case 6: return {1, 2};
        case 7: return {0, 2};
        case 8: return {0, 1};
        default: throw std::invalid_argument("symbol out of {1..8}");
    }
}

Point apply_similarity(const Word& w, Point p) {
    // Innermost map acts first.
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        auto off = similarity_offset(*it);
        p.x = p.x / 3.0 + off[0] / 3.0;
        p.y = p.y / 3.0 + off[1] / 3.0;
    }
    return p;
}

Square cell_square(const Word& w) {
    // Exact: accumulate the lower-left corner in units of 3^{-n}.
    std::int64_t ix = 0, iy = 0;
    for (int s : w) {
        auto off = similarity_offset(s);
        ix = 3 * ix + off[0];
        iy = 3 * iy + off[1];
    }
    double side = std::pow(3.0, -static_cast<double>(w.size()));
    return Square{static_cast<double>(ix) * side, static_cast<double>(iy) * side, side};
}

int rho_exponent(const Word& w) {
    int k = 0;
    for (int s : w) {
        if (s < 1 || s > 8) throw std::invalid_argument("symbol out of {1..8}");
        if (s % 2 == 0) ++k;
    }
    return k;
}

double cell_measure(const Word& w, const WeightConfig& cfg) {
    return std::pow(cfg.rho, rho_exponent(w)) /
           std::pow(cfg.mass_normalizer(), static_cast<double>(w.size()));
}

bool precarpet_cell_exists(std::int64_t i, std::int64_t j) {
    if (i < 0 || j < 0) return false;
    while (i > 0 || j > 0) {
        if (i % 3 == 1 && j % 3 == 1) return false;
        i /= 3;
        j /= 3;
    }
    return true;
}

int precarpet_cell_rho_exponent(std::int64_t i, std::int64_t j) {
    int k = 0;
    while (i > 0 || j > 0) {
        int di = static_cast<int>(i % 3), dj = static_cast<int>(j % 3);
        if ((di == 1) != (dj == 1)) ++k;
        i /= 3;
        j /= 3;
    }
    return k;
}

double precarpet_cell_weight(std::int64_t i, std::int64_t j, const WeightConfig& cfg) {
    return std::pow(cfg.rho, precarpet_cell_rho_exponent(i, j));
}

namespace {
int digit_pair_symbol(int di, int dj) {
    static const int table[3][3] = {{1, 2, 3}, {8, 0, 4}, {7, 6, 5}};
    return table[dj][di];  // 0 marks the removed center
}
}  // namespace

Word precarpet_cell_word(std::int64_t i, std::int64_t j, int n) {
    Word w(static_cast<std::size_t>(n));
    for (int p = n - 1; p >= 0; --p) {
        int s = digit_pair_symbol(static_cast<int>(i % 3), static_cast<int>(j % 3));
        if (s == 0) throw std::invalid_argument("cell not in the pre-carpet");
        w[static_cast<std::size_t>(p)] = s;
        i /= 3;
        j /= 3;
    }
    if (i != 0 || j != 0) throw std::invalid_argument("cell outside [0,3^n)^2");
    return w;
}

std::vector<WeightedSquare> precarpet_cells(int n, const WeightConfig& cfg, int cap) {
    if (n < 1) throw std::invalid_argument("level must be >= 1");
    if (n > cap) throw std::invalid_argument("level exceeds configured cap");
    std::int64_t side = 1;
    for (int p = 0; p < n; ++p) side *= 3;
    std::vector<WeightedSquare> out;
    out.reserve(static_cast<std::size_t>(std::pow(8.0, n)));
    for (std::int64_t j = 0; j < side; ++j)
        for (std::int64_t i = 0; i < side; ++i) {
            if (!precarpet_cell_exists(i, j)) continue;
            WeightedSquare ws;
            ws.square = Square{static_cast<double>(i), static_cast<double>(j), 1.0};
            ws.weight = precarpet_cell_weight(i, j, cfg);
            ws.word = precarpet_cell_word(i, j, n);
            out.push_back(std::move(ws));
        }
    return out;
}

Square neighborhood(Point x, int n, NeighborhoodKind kind) {
    double h = std::pow(3.0, n);
    switch (kind) {
        case NeighborhoodKind::Q: {
            double i = std::floor(x.x / h), j = std::floor(x.y / h);
            return Square{i * h, j * h, h};
        }
        case NeighborhoodKind::D: {
            // x in [(i-1/2)3^n, (i+1/2)3^n) x [...] picks center (i*3^n, j*3^n).
            double i = std::floor(x.x / h + 0.5), j = std::floor(x.y / h + 0.5);
            return Square{(i - 1.0) * h, (j - 1.0) * h, 2.0 * h};
        }
        case NeighborhoodKind::G: {
            double i = std::floor(x.x / h + 0.5), j = std::floor(x.y / h + 0.5);
            double r = (2.0 / 3.0) * h;
            return Square{i * h - r, j * h - r, 2.0 * r};
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace carpetlab
