#ifndef CARPETLAB_SOLVER_HPP
#define CARPETLAB_SOLVER_HPP

#include <vector>

#include "carpetlab/graph.hpp"

namespace carpetlab {

// Compressed sparse row matrix, symmetric positive (semi-)definite use only.
struct CsrMatrix {
    int n = 0;
    std::vector<int> row_ptr;
    std::vector<int> col;
    std::vector<double> val;

    void multiply(const double* x, double* y) const;
};

struct SolveStats {
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

// Jacobi-preconditioned conjugate gradients for A x = b.
SolveStats conjugate_gradient(const CsrMatrix& A, const std::vector<double>& b,
                              std::vector<double>& x, double tol = 1e-10, int max_iter = -1);

// Weighted graph Laplacian L = D - C restricted to `free_nodes` (Dirichlet
// elimination: edges to eliminated nodes keep their diagonal contribution).
// `index_of` maps graph node -> position in the reduced system, -1 if
// eliminated.
CsrMatrix graph_laplacian(const CellGraph& g, const std::vector<int>& index_of, int n_free);

// Solve the Dirichlet problem L u = rhs on the graph with boundary values
// fixed: `fixed[v]` >= 0 means node v is held at `fixed_value[fixed[v]]`.
// Returns the full potential vector over all graph nodes.
struct DirichletProblem {
    const CellGraph* graph = nullptr;
    std::vector<int> fixed;           // per node: -1 free, else index into values
    std::vector<double> fixed_value;  // boundary values
    std::vector<double> source;       // optional per-node source term (may be empty)
};

struct DirichletSolution {
    std::vector<double> potential;  // per graph node
    SolveStats stats;
};

DirichletSolution solve_dirichlet(const DirichletProblem& p, double tol = 1e-10);

// Dirichlet energy sum_{uv} c_uv (u_u - u_v)^2 of a potential.
double dirichlet_energy(const CellGraph& g, const std::vector<double>& u);

}  // namespace carpetlab

#endif
