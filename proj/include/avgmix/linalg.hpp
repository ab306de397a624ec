#pragma once

#include <vector>

namespace avgmix {

struct Graph;

// Eigen-decomposition of a dense symmetric matrix. `values` are sorted
// ascending; eigenvector k is the k-th column of the row-major `vectors`
// array (entry i of vector k at vectors[i*n + k]).
struct EigenResult {
    int n = 0;
    std::vector<double> values;
    std::vector<double> vectors;

    std::vector<double> eigenvector(int k) const;
};

// Cyclic Jacobi for symmetric matrices (row-major n*n input). Intended for
// desk-scale n up to a couple of thousand. Throws std::invalid_argument on
// non-symmetric input and std::runtime_error if the off-diagonal norm has
// not dropped below tolerance within the sweep budget.
EigenResult eigen_symmetric(const std::vector<double>& m, int n);

// y = L x for the graph Laplacian, computed from adjacency.
void apply_laplacian(const Graph& g, const std::vector<double>& x, std::vector<double>& y);

// Solves L x = b on the subspace orthogonal to the all-ones vector by
// conjugate gradient; b is projected onto that subspace first. Returns the
// zero-mean solution.
std::vector<double> solve_laplacian_cg(const Graph& g, const std::vector<double>& b,
                                       double tol = 1e-10, int max_iter = 0);

} // namespace avgmix
