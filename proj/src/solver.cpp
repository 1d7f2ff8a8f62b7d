#include "carpetlab/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace carpetlab {

void CsrMatrix::multiply(const double* x, double* y) const {
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int p = row_ptr[static_cast<std::size_t>(i)];
             p < row_ptr[static_cast<std::size_t>(i) + 1]; ++p)
            s += val[static_cast<std::size_t>(p)] * x[col[static_cast<std::size_t>(p)]];
        y[i] = s;
    }
}

SolveStats conjugate_gradient(const CsrMatrix& A, const std::vector<double>& b,
                              std::vector<double>& x, double tol, int max_iter) {
    const int n = A.n;
    if (max_iter < 0) max_iter = 50 * static_cast<int>(std::sqrt(static_cast<double>(n))) + 200;
    x.assign(static_cast<std::size_t>(n), 0.0);

    std::vector<double> diag(static_cast<std::size_t>(n), 1.0);
    for (int i = 0; i < n; ++i)
        for (int p = A.row_ptr[static_cast<std::size_t>(i)];
             p < A.row_ptr[static_cast<std::size_t>(i) + 1]; ++p)
            if (A.col[static_cast<std::size_t>(p)] == i)
                diag[static_cast<std::size_t>(i)] = A.val[static_cast<std::size_t>(p)];

    std::vector<double> r = b, z(static_cast<std::size_t>(n)), p(static_cast<std::size_t>(n)),
                        Ap(static_cast<std::size_t>(n));
    double bnorm = 0.0;
    for (double v : b) bnorm += v * v;
    bnorm = std::sqrt(bnorm);
    SolveStats st;
    if (bnorm == 0.0) {
        st.converged = true;
        return st;
    }

    for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = r[static_cast<std::size_t>(i)] /
                                                                 diag[static_cast<std::size_t>(i)];
    p = z;
    double rz = 0.0;
    for (int i = 0; i < n; ++i) rz += r[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)];

    for (int it = 0; it < max_iter; ++it) {
        A.multiply(p.data(), Ap.data());
        double pAp = 0.0;
        for (int i = 0; i < n; ++i)
            pAp += p[static_cast<std::size_t>(i)] * Ap[static_cast<std::size_t>(i)];
        if (pAp <= 0.0) break;
        double alpha = rz / pAp;
        double rnorm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            x[static_cast<std::size_t>(i)] += alpha * p[static_cast<std::size_t>(i)];
            r[static_cast<std::size_t>(i)] -= alpha * Ap[static_cast<std::size_t>(i)];
            rnorm2 += r[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(i)];
        }
        st.iterations = it + 1;
        st.residual = std::sqrt(rnorm2) / bnorm;
        if (st.residual <= tol) {
            st.converged = true;
            return st;
        }
        double rz_new = 0.0;
        for (int i = 0; i < n; ++i) {
            z[static_cast<std::size_t>(i)] =
                r[static_cast<std::size_t>(i)] / diag[static_cast<std::size_t>(i)];
            rz_new += r[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)];
        }
        double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < n; ++i)
            p[static_cast<std::size_t>(i)] =
                z[static_cast<std::size_t>(i)] + beta * p[static_cast<std::size_t>(i)];
    }
    return st;
}

CsrMatrix graph_laplacian(const CellGraph& g, const std::vector<int>& index_of, int n_free) {
    // Count entries: one diagonal per free node plus one off-diagonal per
    // free-free edge endpoint.
    std::vector<int> count(static_cast<std::size_t>(n_free), 1);
    for (const auto& e : g.edges) {
        int iu = index_of[static_cast<std::size_t>(e.u)], iv = index_of[static_cast<std::size_t>(e.v)];
        if (iu >= 0 && iv >= 0) {
            ++count[static_cast<std::size_t>(iu)];
            ++count[static_cast<std::size_t>(iv)];
        }
    }
    CsrMatrix A;
    A.n = n_free;
    A.row_ptr.assign(static_cast<std::size_t>(n_free) + 1, 0);
    for (int i = 0; i < n_free; ++i)
        A.row_ptr[static_cast<std::size_t>(i) + 1] =
            A.row_ptr[static_cast<std::size_t>(i)] + count[static_cast<std::size_t>(i)];
    A.col.assign(static_cast<std::size_t>(A.row_ptr.back()), 0);
    A.val.assign(A.col.size(), 0.0);

    // Diagonal goes first in each row; accumulate into it directly.
    std::vector<int> cursor(static_cast<std::size_t>(n_free));
    for (int i = 0; i < n_free; ++i) {
        int d = A.row_ptr[static_cast<std::size_t>(i)];
        A.col[static_cast<std::size_t>(d)] = i;
        cursor[static_cast<std::size_t>(i)] = d + 1;
    }
    for (const auto& e : g.edges) {
        int iu = index_of[static_cast<std::size_t>(e.u)], iv = index_of[static_cast<std::size_t>(e.v)];
        if (iu >= 0)
            A.val[static_cast<std::size_t>(A.row_ptr[static_cast<std::size_t>(iu)])] +=
                e.conductance;
        if (iv >= 0)
            A.val[static_cast<std::size_t>(A.row_ptr[static_cast<std::size_t>(iv)])] +=
                e.conductance;
        if (iu >= 0 && iv >= 0) {
            int pu = cursor[static_cast<std::size_t>(iu)]++;
            A.col[static_cast<std::size_t>(pu)] = iv;
            A.val[static_cast<std::size_t>(pu)] = -e.conductance;
            int pv = cursor[static_cast<std::size_t>(iv)]++;
            A.col[static_cast<std::size_t>(pv)] = iu;
            A.val[static_cast<std::size_t>(pv)] = -e.conductance;
        }
    }
    return A;
}

DirichletSolution solve_dirichlet(const DirichletProblem& p, double tol) {
    const CellGraph& g = *p.graph;
    const auto nv = g.nodes.size();
    if (p.fixed.size() != nv) throw std::invalid_argument("fixed vector size mismatch");

    std::vector<int> index_of(nv, -1);
    int n_free = 0;
    for (std::size_t v = 0; v < nv; ++v)
        if (p.fixed[v] < 0) index_of[v] = n_free++;

    CsrMatrix A = graph_laplacian(g, index_of, n_free);

    std::vector<double> rhs(static_cast<std::size_t>(n_free), 0.0);
    if (!p.source.empty()) {
        if (p.source.size() != nv) throw std::invalid_argument("source vector size mismatch");
        for (std::size_t v = 0; v < nv; ++v)
            if (index_of[v] >= 0) rhs[static_cast<std::size_t>(index_of[v])] = p.source[v];
    }
    for (const auto& e : g.edges) {
        int iu = index_of[static_cast<std::size_t>(e.u)], iv = index_of[static_cast<std::size_t>(e.v)];
        if (iu >= 0 && iv < 0)
            rhs[static_cast<std::size_t>(iu)] +=
                e.conductance * p.fixed_value[static_cast<std::size_t>(
                                    p.fixed[static_cast<std::size_t>(e.v)])];
        else if (iv >= 0 && iu < 0)
            rhs[static_cast<std::size_t>(iv)] +=
                e.conductance * p.fixed_value[static_cast<std::size_t>(
                                    p.fixed[static_cast<std::size_t>(e.u)])];
    }

    std::vector<double> x;
    DirichletSolution sol;
    sol.stats = conjugate_gradient(A, rhs, x, tol);

    sol.potential.assign(nv, 0.0);
    for (std::size_t v = 0; v < nv; ++v)
        sol.potential[v] = p.fixed[v] >= 0
                               ? p.fixed_value[static_cast<std::size_t>(p.fixed[v])]
                               : x[static_cast<std::size_t>(index_of[v])];
    return sol;
}

double dirichlet_energy(const CellGraph& g, const std::vector<double>& u) {
    double e = 0.0;
    for (const auto& ed : g.edges) {
        double d = u[static_cast<std::size_t>(ed.u)] - u[static_cast<std::size_t>(ed.v)];
        e += ed.conductance * d * d;
    }
    return e;
}

}  // namespace carpetlab
