#pragma once

#include <vector>

#include "avgmix/graph.hpp"
#include "avgmix/linalg.hpp"

namespace avgmix {

// Spectral profile of a connected graph: the Laplacian gap lambda2, the
// convergence parameter gamma = |E|/lambda2, the Fiedler vector with its
// delocalization coefficient, and the entropy-penalty vector beta solving
// L beta = 2 ln2 (d - dbar 1), shifted so min(beta) = 0.
struct SpectralSummary {
    int n = 0;
    long long edges = 0;
    double lambda2 = 0.0;
    double gamma = 0.0;
    std::vector<double> fiedler; // unit L2 norm, first nonzero coordinate positive
    double delta = 0.0;          // ||fiedler||_1 / (sqrt(n) ||fiedler||_2)
    std::vector<double> beta;    // >= 0 componentwise, min entry exactly 0
    double beta_residual = 0.0;  // ||L beta - 2 ln2 (d - dbar 1)||_inf
    double drift_constant = 0.0; // expected per-step growth bound constant (ln 2)
};

// Dense Laplacian L = D - A, row-major n*n.
std::vector<double> laplacian(const Graph& g);

// Dense averaging matrix M = I - L / (2|E|); doubly stochastic.
std::vector<double> averaging_matrix(const Graph& g);

// M^t v0 by repeated matrix-free multiplication.
std::vector<double> expected_state(const Graph& g, const std::vector<double>& v0, long long t);

// ||v||_1 / (sqrt(n) ||v||_2); in (0, 1] for nonzero v.
double delocalization(const std::vector<double>& v);

// Conjugate-gradient solve of L beta = 2 ln2 (d - dbar 1), shifted so the
// minimum entry is exactly zero. Regular graphs get the zero vector.
std::vector<double> solve_beta(const Graph& g);

SpectralSummary spectral_summary(const Graph& g);

// Fiedler vector: unit eigenvector for lambda2 with the sign fixed so the
// first coordinate of nonnegligible magnitude is positive.
std::vector<double> fiedler_vector(const Graph& g);

} // namespace avgmix
