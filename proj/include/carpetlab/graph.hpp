#ifndef CARPETLAB_GRAPH_HPP
#define CARPETLAB_GRAPH_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "carpetlab/geometry.hpp"

namespace carpetlab {

enum class NodeRole : std::uint8_t {
    Center,     // cell center (X)
    Mid,        // cell edge midpoint (Y)
    Corner,     // cell corner (Z)
    Grid,       // interior finite-volume node
    Boundary,   // half-edge node on an absorbing segment
    Interface,  // node inserted on an interior lattice segment
};

struct GraphNode {
    double x = 0.0, y = 0.0;
    NodeRole role = NodeRole::Grid;
    int label = -1;      // segment id for Boundary/Interface nodes
    double mass = 0.0;   // measure attached to the node (grid graphs)
};

struct GraphEdge {
    int u = 0, v = 0;
    double conductance = 0.0;
};

struct CellGraph {
    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges;
    int level = 0;
    double rho = 1.0;

    int size() const { return static_cast<int>(nodes.size()); }
    double total_conductance(int v) const;  // sum over incident edges
    std::vector<double> node_conductance() const;
    std::vector<int> nodes_with_label(int label) const;

    // Adjacency built on demand for walks and matrix-free products.
    struct Adjacency {
        std::vector<int> offsets;
        std::vector<int> neighbor;
        std::vector<double> weight;
    };
    Adjacency adjacency() const;
};

// A unit cell of the pre-carpet with its mu_0 weight.
struct CellSpec {
    std::int64_t i = 0, j = 0;
    double weight = 1.0;
};

// Axis-aligned lattice segment used to mark absorbing boundary pieces or
// interior interface lines. axis = 0: vertical line x = coord, span in y;
// axis = 1: horizontal line y = coord, span in x. Half-open [lo, hi).
struct Segment {
    int axis = 0;
    double coord = 0.0;
    double lo = 0.0, hi = 0.0;
    int label = 0;
};

// Cross graph G_n: cell centers and edge midpoints of F_0^n, spokes of
// conductance mu_0(Q).
CellGraph build_cross_graph(int n, const WeightConfig& cfg, int cap = 6);

// Diagonal graph D_n: cell centers and corners, one diagonal edge per
// incident cell, conductance mu_0(Q).
CellGraph build_diag_graph(int n, const WeightConfig& cfg, int cap = 6);

// Cross/diag graph over an arbitrary list of unit cells.
CellGraph build_cross_graph_cells(const std::vector<CellSpec>& cells);
CellGraph build_diag_graph_cells(const std::vector<CellSpec>& cells);

// Cell-centered finite-volume grid over a union of unit cells, k subcells
// per unit length. Interior edges carry the cell weight (2-D sheet
// conductance is mesh independent); edges crossing a cell interface carry
// the harmonic mean; boundary faces on `absorbing` segments get half-edge
// nodes of conductance 2*mu_0(Q); `interfaces` segments get nodes inserted
// on the crossing edges (network-equivalent split into two half-edges).
CellGraph build_grid_graph(const std::vector<CellSpec>& cells, int k,
                           const std::vector<Segment>& absorbing = {},
                           const std::vector<Segment>& interfaces = {},
                           std::size_t max_nodes = 4'000'000);

// Cells of F_0^n as CellSpecs.
std::vector<CellSpec> region_square(int n, const WeightConfig& cfg);

// Pre-carpet cells inside the closed box [x0-r, x0+r]^2 (integer bounds).
std::vector<CellSpec> region_box(std::int64_t cx, std::int64_t cy, std::int64_t r,
                                 const WeightConfig& cfg);

// Nearest node of a given role set; returns -1 if none.
int nearest_node(const CellGraph& g, Point p,
                 std::initializer_list<NodeRole> roles = {NodeRole::Grid, NodeRole::Center,
                                                          NodeRole::Mid, NodeRole::Corner});

}  // namespace carpetlab

#endif
