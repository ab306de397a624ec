#include "avgmix/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "avgmix/stats.hpp"

namespace avgmix {

namespace {

constexpr double kLn2 = 0.693147180559945309417232121458;

void fix_sign(std::vector<double>& v) {
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    for (double x : v) {
        if (std::abs(x) > 1e-9 * scale) {
            if (x < 0)
                for (double& y : v) y = -y;
            return;
        }
    }
}

} // namespace

std::vector<double> laplacian(const Graph& g) {
    const int n = g.n;
    std::vector<double> L(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) L[static_cast<size_t>(i) * n + i] = g.degrees[i];
    for (const Edge& e : g.edges) {
        L[static_cast<size_t>(e.u) * n + e.v] = -1.0;
        L[static_cast<size_t>(e.v) * n + e.u] = -1.0;
    }
    return L;
}

std::vector<double> averaging_matrix(const Graph& g) {
    const int n = g.n;
    const double h = 1.0 / (2.0 * static_cast<double>(g.edge_count()));
    std::vector<double> M = laplacian(g);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            size_t k = static_cast<size_t>(i) * n + j;
            M[k] = (i == j ? 1.0 : 0.0) - h * M[k];
        }
    return M;
}

std::vector<double> expected_state(const Graph& g, const std::vector<double>& v0, long long t) {
    if (static_cast<int>(v0.size()) != g.n) throw std::invalid_argument("expected_state: size mismatch");
    if (t < 0) throw std::invalid_argument("expected_state: t >= 0 required");
    const double h = 1.0 / (2.0 * static_cast<double>(g.edge_count()));
    std::vector<double> x = v0, y(g.n);
    for (long long s = 0; s < t; ++s) {
        for (int i = 0; i < g.n; ++i) {
            KahanSum acc;
            for (int j : g.adjacency[i]) acc.add(x[j] - x[i]);
            y[i] = x[i] + h * acc.value();
        }
        x.swap(y);
    }
    return x;
}

double delocalization(const std::vector<double>& v) {
    KahanSum l1, l2;
    for (double x : v) {
        l1.add(std::abs(x));
        l2.add(x * x);
    }
    double norm2 = std::sqrt(l2.value());
    if (norm2 == 0.0) throw std::invalid_argument("delocalization: zero vector");
    return l1.value() / (std::sqrt(static_cast<double>(v.size())) * norm2);
}

std::vector<double> solve_beta(const Graph& g) {
    const int n = g.n;
    const double dbar = g.average_degree();
    std::vector<double> b(n);
    for (int i = 0; i < n; ++i) b[i] = 2.0 * kLn2 * (g.degrees[i] - dbar);
    std::vector<double> beta = solve_laplacian_cg(g, b);
    double mn = *std::min_element(beta.begin(), beta.end());
    for (double& x : beta) x -= mn;
    return beta;
}

std::vector<double> fiedler_vector(const Graph& g) {
    EigenResult eig = eigen_symmetric(laplacian(g), g.n);
    std::vector<double> u = eig.eigenvector(1);
    fix_sign(u);
    return u;
}

SpectralSummary spectral_summary(const Graph& g) {
    SpectralSummary s;
    s.n = g.n;
    s.edges = g.edge_count();

    EigenResult eig = eigen_symmetric(laplacian(g), g.n);
    s.lambda2 = eig.values[1];
    if (s.lambda2 <= 0.0)
        throw std::runtime_error("spectral_summary: lambda2 <= 0 on a connected graph");
    s.gamma = static_cast<double>(s.edges) / s.lambda2;

    s.fiedler = eig.eigenvector(1);
    fix_sign(s.fiedler);
    s.delta = delocalization(s.fiedler);

    s.beta = solve_beta(g);
    const double dbar = g.average_degree();
    std::vector<double> lb;
    apply_laplacian(g, s.beta, lb);
    double res = 0.0;
    for (int i = 0; i < g.n; ++i)
        res = std::max(res, std::abs(lb[i] - 2.0 * kLn2 * (g.degrees[i] - dbar)));
    s.beta_residual = res;
    s.drift_constant = kLn2;
    return s;
}

} // namespace avgmix
