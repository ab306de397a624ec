#include "avgmix/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "avgmix/graph.hpp"
#include "avgmix/stats.hpp"

namespace avgmix {

std::vector<double> EigenResult::eigenvector(int k) const {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = vectors[static_cast<size_t>(i) * n + k];
    return v;
}

namespace {

double off_diagonal_norm(const std::vector<double>& a, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double x = a[static_cast<size_t>(i) * n + j];
            s += 2.0 * x * x;
        }
    return std::sqrt(s);
}

} // namespace

EigenResult eigen_symmetric(const std::vector<double>& m, int n) {
    if (n <= 0 || m.size() != static_cast<size_t>(n) * n)
        throw std::invalid_argument("eigen_symmetric: bad dimensions");
    double scale = 0.0;
    for (double x : m) scale = std::max(scale, std::abs(x));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double d = std::abs(m[static_cast<size_t>(i) * n + j] - m[static_cast<size_t>(j) * n + i]);
            if (d > 1e-12 * std::max(1.0, scale))
                throw std::invalid_argument("eigen_symmetric: matrix is not symmetric");
        }

    std::vector<double> a = m;
    std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;

    auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };

    double frob = 0.0;
    for (double x : m) frob += x * x;
    frob = std::sqrt(frob);
    const double target = 1e-12 * std::max(1.0, frob);
    const int max_sweeps = 100;

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(a, n) <= target) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (apq == 0.0) continue;
                double app = at(p, p), aqq = at(q, q);
                // Skip rotations that cannot change anything at working precision.
                if (std::abs(apq) < 1e-300 ||
                    std::abs(apq) <= 1e-17 * (std::abs(app) + std::abs(aqq)))
                    continue;
                double tau = (aqq - app) / (2.0 * apq);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v[static_cast<size_t>(k) * n + p];
                    double vkq = v[static_cast<size_t>(k) * n + q];
                    v[static_cast<size_t>(k) * n + p] = c * vkp - s * vkq;
                    v[static_cast<size_t>(k) * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if (sweep == max_sweeps && off_diagonal_norm(a, n) > target)
        throw std::runtime_error("eigen_symmetric: Jacobi did not converge within sweep budget");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return a[static_cast<size_t>(i) * n + i] < a[static_cast<size_t>(j) * n + j];
    });

    EigenResult r;
    r.n = n;
    r.values.resize(n);
    r.vectors.resize(static_cast<size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
        int src = order[k];
        r.values[k] = a[static_cast<size_t>(src) * n + src];
        for (int i = 0; i < n; ++i)
            r.vectors[static_cast<size_t>(i) * n + k] = v[static_cast<size_t>(i) * n + src];
    }
    return r;
}

void apply_laplacian(const Graph& g, const std::vector<double>& x, std::vector<double>& y) {
    y.assign(g.n, 0.0);
    for (int i = 0; i < g.n; ++i) {
        KahanSum s;
        for (int j : g.adjacency[i]) s.add(x[i] - x[j]);
        y[i] = s.value();
    }
}

std::vector<double> solve_laplacian_cg(const Graph& g, const std::vector<double>& b, double tol,
                                       int max_iter) {
    const int n = g.n;
    if (static_cast<int>(b.size()) != n) throw std::invalid_argument("solve_laplacian_cg: size mismatch");
    if (max_iter <= 0) max_iter = 20 * n + 200;

    auto project = [n](std::vector<double>& x) {
        KahanSum s;
        for (double v : x) s.add(v);
        double m = s.value() / n;
        for (double& v : x) v -= m;
    };

    std::vector<double> r = b;
    project(r);
    std::vector<double> x(n, 0.0), p = r, lp(n);

    auto dot = [](const std::vector<double>& a, const std::vector<double>& c) {
        KahanSum s;
        for (size_t i = 0; i < a.size(); ++i) s.add(a[i] * c[i]);
        return s.value();
    };

    double rr = dot(r, r);
    double b_norm = std::sqrt(rr);
    if (b_norm == 0.0) return x;
    const double stop = tol * std::max(1.0, b_norm);

    for (int it = 0; it < max_iter; ++it) {
        if (std::sqrt(rr) <= stop) break;
        apply_laplacian(g, p, lp);
        project(lp);
        double denom = dot(p, lp);
        if (denom <= 0.0) break;
        double alpha = rr / denom;
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * lp[i];
        }
        project(r);
        double rr_new = dot(r, r);
        double beta = rr_new / rr;
        rr = rr_new;
        for (int i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    }
    if (std::sqrt(rr) > stop * 10.0)
        throw std::runtime_error("solve_laplacian_cg: did not converge");
    project(x);
    return x;
}

} // namespace avgmix
