#include "carpetlab/graph.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace carpetlab {

double CellGraph::total_conductance(int v) const {
    double c = 0.0;
    for (const auto& e : edges)
        if (e.u == v || e.v == v) c += e.conductance;
    return c;
}

std::vector<double> CellGraph::node_conductance() const {
    std::vector<double> c(nodes.size(), 0.0);
    for (const auto& e : edges) {
        c[static_cast<std::size_t>(e.u)] += e.conductance;
        c[static_cast<std::size_t>(e.v)] += e.conductance;
    }
    return c;
}

std::vector<int> CellGraph::nodes_with_label(int label) const {
    std::vector<int> out;
    for (int v = 0; v < size(); ++v)
        if (nodes[static_cast<std::size_t>(v)].label == label) out.push_back(v);
    return out;
}

CellGraph::Adjacency CellGraph::adjacency() const {
    Adjacency adj;
    adj.offsets.assign(nodes.size() + 1, 0);
    for (const auto& e : edges) {
        ++adj.offsets[static_cast<std::size_t>(e.u) + 1];
        ++adj.offsets[static_cast<std::size_t>(e.v) + 1];
    }
    for (std::size_t v = 1; v < adj.offsets.size(); ++v) adj.offsets[v] += adj.offsets[v - 1];
    adj.neighbor.resize(static_cast<std::size_t>(adj.offsets.back()));
    adj.weight.resize(adj.neighbor.size());
    std::vector<int> cursor(adj.offsets.begin(), adj.offsets.end() - 1);
    for (const auto& e : edges) {
        adj.neighbor[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.u)])] = e.v;
        adj.weight[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.u)]++)] =
            e.conductance;
        adj.neighbor[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.v)])] = e.u;
        adj.weight[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.v)]++)] =
            e.conductance;
    }
    return adj;
}

namespace {

// Exact node identification: coordinates scaled to integers, packed.
constexpr std::int64_t kPackOffset = std::int64_t{1} << 25;
std::int64_t pack(std::int64_t sx, std::int64_t sy) {
    return ((sx + kPackOffset) << 27) | (sy + kPackOffset);
}

struct NodeIndex {
    std::unordered_map<std::int64_t, int> ids;
    CellGraph* g;

    int get(std::int64_t sx, std::int64_t sy, double scale, NodeRole role, int label = -1) {
        auto key = pack(sx, sy);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int id = g->size();
        ids.emplace(key, id);
        g->nodes.push_back(GraphNode{sx * scale, sy * scale, role, label, 0.0});
        return id;
    }
};

}  // namespace

std::vector<CellSpec> region_square(int n, const WeightConfig& cfg) {
    std::int64_t side = 1;
    for (int p = 0; p < n; ++p) side *= 3;
    std::vector<CellSpec> cells;
    for (std::int64_t j = 0; j < side; ++j)
        for (std::int64_t i = 0; i < side; ++i)
            if (precarpet_cell_exists(i, j))
                cells.push_back(CellSpec{i, j, precarpet_cell_weight(i, j, cfg)});
    return cells;
}

std::vector<CellSpec> region_box(std::int64_t cx, std::int64_t cy, std::int64_t r,
                                 const WeightConfig& cfg) {
    std::vector<CellSpec> cells;
    for (std::int64_t j = cy - r; j < cy + r; ++j)
        for (std::int64_t i = cx - r; i < cx + r; ++i)
            if (precarpet_cell_exists(i, j))
                cells.push_back(CellSpec{i, j, precarpet_cell_weight(i, j, cfg)});
    return cells;
}

namespace {

CellGraph build_cell_graph(const std::vector<CellSpec>& cells, bool diagonal) {
    CellGraph g;
    NodeIndex idx{{}, &g};
    const double scale = 0.5;  // node coordinates are half-integers
    for (const auto& c : cells) {
        std::int64_t cx = 2 * c.i + 1, cy = 2 * c.j + 1;
        int center = idx.get(cx, cy, scale, NodeRole::Center);
        g.nodes[static_cast<std::size_t>(center)].mass += c.weight;
        const std::int64_t off[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        const std::int64_t diag_off[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
        for (int d = 0; d < 4; ++d) {
            int other;
            if (diagonal)
                other = idx.get(cx + diag_off[d][0], cy + diag_off[d][1], scale, NodeRole::Corner);
            else
                other = idx.get(cx + off[d][0], cy + off[d][1], scale, NodeRole::Mid);
            g.edges.push_back(GraphEdge{center, other, c.weight});
        }
    }
    return g;
}

}  // namespace

CellGraph build_cross_graph_cells(const std::vector<CellSpec>& cells) {
    return build_cell_graph(cells, false);
}

CellGraph build_diag_graph_cells(const std::vector<CellSpec>& cells) {
    return build_cell_graph(cells, true);
}

CellGraph build_cross_graph(int n, const WeightConfig& cfg, int cap) {
    if (n < 1 || n > cap) throw std::invalid_argument("level out of range");
    CellGraph g = build_cross_graph_cells(region_square(n, cfg));
    g.level = n;
    g.rho = cfg.rho;
    return g;
}

CellGraph build_diag_graph(int n, const WeightConfig& cfg, int cap) {
    if (n < 1 || n > cap) throw std::invalid_argument("level out of range");
    CellGraph g = build_diag_graph_cells(region_square(n, cfg));
    g.level = n;
    g.rho = cfg.rho;
    return g;
}

namespace {

// Does (coord, pos) lie on the segment (pos in [lo, hi))?
const Segment* match_segment(const std::vector<Segment>& segs, int axis, double coord,
                             double pos) {
    for (const auto& s : segs) {
        if (s.axis != axis) continue;
        if (std::abs(s.coord - coord) > 1e-9) continue;
        if (pos >= s.lo - 1e-9 && pos < s.hi - 1e-9) return &s;
    }
    return nullptr;
}

}  // namespace

CellGraph build_grid_graph(const std::vector<CellSpec>& cells, int k,
                           const std::vector<Segment>& absorbing,
                           const std::vector<Segment>& interfaces, std::size_t max_nodes) {
    if (k < 1) throw std::invalid_argument("need at least 1 subdivision per unit square");
    if (cells.empty()) throw std::invalid_argument("empty region");
    if (cells.size() * static_cast<std::size_t>(k) * static_cast<std::size_t>(k) > max_nodes)
        throw std::invalid_argument("grid exceeds node cap");

    std::unordered_map<std::int64_t, double> weight_of;
    for (const auto& c : cells) weight_of[pack(c.i, c.j)] = c.weight;

    CellGraph g;
    NodeIndex idx{{}, &g};
    const double scale = 1.0 / (2 * k);  // coordinates in units of 1/(2k)
    const double inv_k2 = 1.0 / (static_cast<double>(k) * k);

    auto center_id = [&](std::int64_t ci, std::int64_t cj, int a, int b) {
        return idx.get(2 * k * ci + 2 * a + 1, 2 * k * cj + 2 * b + 1, scale, NodeRole::Grid);
    };

    for (const auto& c : cells) {
        for (int b = 0; b < k; ++b)
            for (int a = 0; a < k; ++a) {
                int u = center_id(c.i, c.j, a, b);
                g.nodes[static_cast<std::size_t>(u)].mass += c.weight * inv_k2;

                // Right and top neighbors; left/bottom are covered from the
                // other side, exterior faces handled below.
                for (int dir = 0; dir < 2; ++dir) {
                    int na = a + (dir == 0 ? 1 : 0), nb = b + (dir == 0 ? 0 : 1);
                    std::int64_t ni = c.i, nj = c.j;
                    bool crossing = false;
                    if (na == k) { na = 0; ni += 1; crossing = true; }
                    if (nb == k) { nb = 0; nj += 1; crossing = true; }
                    auto wit = weight_of.find(pack(ni, nj));
                    if (wit == weight_of.end()) continue;  // exterior face, done below
                    double w2 = wit->second;
                    int v = center_id(ni, nj, na, nb);
                    if (!crossing) {
                        g.edges.push_back(GraphEdge{u, v, c.weight});
                        continue;
                    }
                    // Crossing point on the lattice line.
                    int axis = dir == 0 ? 0 : 1;
                    double coord = dir == 0 ? static_cast<double>(ni) : static_cast<double>(nj);
                    double pos = dir == 0 ? c.j + (b + 0.5) / k : c.i + (a + 0.5) / k;
                    const Segment* seg = match_segment(interfaces, axis, coord, pos);
                    if (seg) {
                        std::int64_t sx = dir == 0 ? 2 * k * ni : 2 * k * c.i + 2 * a + 1;
                        std::int64_t sy = dir == 0 ? 2 * k * c.j + 2 * b + 1 : 2 * k * nj;
                        int m = idx.get(sx, sy, scale, NodeRole::Interface, seg->label);
                        g.edges.push_back(GraphEdge{u, m, 2.0 * c.weight});
                        g.edges.push_back(GraphEdge{m, v, 2.0 * w2});
                    } else {
                        double h = 2.0 * c.weight * w2 / (c.weight + w2);
                        g.edges.push_back(GraphEdge{u, v, h});
                    }
                }
            }
    }

    // Half-edge nodes on exterior faces: absorbing segments make Boundary
    // nodes, interface segments make pendant Interface nodes (start/probe
    // points on a reflecting side).
    if (!absorbing.empty() || !interfaces.empty()) {
        for (const auto& c : cells) {
            const std::int64_t ndir[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
            for (int d = 0; d < 4; ++d) {
                if (weight_of.count(pack(c.i + ndir[d][0], c.j + ndir[d][1]))) continue;
                int axis = ndir[d][1] == 0 ? 0 : 1;
                double coord = axis == 0 ? (ndir[d][0] > 0 ? c.i + 1.0 : static_cast<double>(c.i))
                                         : (ndir[d][1] > 0 ? c.j + 1.0 : static_cast<double>(c.j));
                for (int t = 0; t < k; ++t) {
                    double pos = (axis == 0 ? c.j : c.i) + (t + 0.5) / k;
                    NodeRole role = NodeRole::Boundary;
                    const Segment* seg = match_segment(absorbing, axis, coord, pos);
                    if (!seg) {
                        seg = match_segment(interfaces, axis, coord, pos);
                        role = NodeRole::Interface;
                    }
                    if (!seg) continue;
                    std::int64_t sx, sy;
                    int a, b;
                    if (axis == 0) {
                        sx = 2 * k * static_cast<std::int64_t>(std::llround(coord));
                        sy = 2 * k * c.j + 2 * t + 1;
                        a = ndir[d][0] > 0 ? k - 1 : 0;
                        b = t;
                    } else {
                        sx = 2 * k * c.i + 2 * t + 1;
                        sy = 2 * k * static_cast<std::int64_t>(std::llround(coord));
                        a = t;
                        b = ndir[d][1] > 0 ? k - 1 : 0;
                    }
                    int m = idx.get(sx, sy, scale, role, seg->label);
                    int u = center_id(c.i, c.j, a, b);
                    g.edges.push_back(GraphEdge{u, m, 2.0 * c.weight});
                }
            }
        }
    }
    return g;
}

int nearest_node(const CellGraph& g, Point p, std::initializer_list<NodeRole> roles) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int v = 0; v < g.size(); ++v) {
        const auto& nd = g.nodes[static_cast<std::size_t>(v)];
        bool ok = false;
        for (auto r : roles)
            if (nd.role == r) { ok = true; break; }
        if (!ok) continue;
        double d = std::hypot(nd.x - p.x, nd.y - p.y);
        if (d < best_d) {
            best_d = d;
            best = v;
        }
    }
    return best;
}

}  // namespace carpetlab
