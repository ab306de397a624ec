#include "avgmix/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "avgmix/parallel.hpp"
#include "avgmix/stats.hpp"

namespace avgmix {

namespace {

constexpr double kLn2 = 0.693147180559945309417232121458;

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void check_probability(const std::vector<double>& v, const char* what) {
    KahanSum sum;
    for (double x : v) {
        if (x < 0.0) throw std::invalid_argument(std::string(what) + ": negative coordinate");
        sum.add(x);
    }
    if (std::abs(sum.value() - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(what) + ": coordinates do not sum to 1");
}

} // namespace

Distance distance_to_mean(const std::vector<double>& v, double mean, int q) {
    if (q != 1 && q != 2) throw std::invalid_argument("distance: q must be 1 or 2");
    KahanSum acc;
    if (q == 1) {
        for (double x : v) acc.add(std::abs(x - mean));
        double p = acc.value();
        return {p, p};
    }
    for (double x : v) {
        double d = x - mean;
        acc.add(d * d);
    }
    double p = acc.value();
    return {p, std::sqrt(p)};
}

double entropy(const std::vector<double>& v) {
    check_probability(v, "entropy");
    KahanSum acc;
    for (double x : v) acc.add(-xlogx(x));
    return acc.value();
}

double augmented_entropy(const std::vector<double>& v, const std::vector<double>& beta) {
    if (v.size() != beta.size()) throw std::invalid_argument("augmented_entropy: size mismatch");
    check_probability(v, "augmented_entropy");
    KahanSum acc;
    for (size_t i = 0; i < v.size(); ++i) {
        if (beta[i] < 0.0) throw std::invalid_argument("augmented_entropy: negative beta entry");
        acc.add(-xlogx(v[i]));
        acc.add(beta[i] * v[i]);
    }
    return acc.value();
}

double fannes_check(const std::vector<double>& v, const std::vector<double>& w) {
    if (v.size() != w.size() || v.size() < 2)
        throw std::invalid_argument("fannes_check: need two distributions on the same n >= 2");
    double sv = entropy(v);
    double sw = entropy(w);
    KahanSum l1;
    for (size_t i = 0; i < v.size(); ++i) l1.add(std::abs(v[i] - w[i]));
    double rhs = l1.value() * std::log(static_cast<double>(v.size())) +
                 1.0 / (std::exp(1.0) * kLn2);
    return rhs - std::abs(sv - sw);
}

double exact_drift(const Graph& g, const std::vector<double>& v, DriftFunctional f,
                   const std::vector<double>* beta) {
    if (static_cast<int>(v.size()) != g.n) throw std::invalid_argument("exact_drift: size mismatch");
    const double edges = static_cast<double>(g.edge_count());
    if (f == DriftFunctional::l2sq) {
        KahanSum acc;
        for (const Edge& e : g.edges) {
            double d = v[e.u] - v[e.v];
            acc.add(d * d);
        }
        return -acc.value() / (2.0 * edges);
    }
    check_probability(v, "exact_drift");
    if (f == DriftFunctional::augmented_entropy && beta == nullptr)
        throw std::invalid_argument("exact_drift: augmented entropy needs beta");
    KahanSum acc;
    for (const Edge& e : g.edges) {
        double a = v[e.u], b = v[e.v];
        double m = 0.5 * (a + b);
        double ds = (xlogx(a) + xlogx(b)) - 2.0 * xlogx(m); // entropy gain for this edge
        acc.add(ds);
        if (f == DriftFunctional::augmented_entropy)
            acc.add((*beta)[e.u] * (m - a) + (*beta)[e.v] * (m - b));
    }
    return acc.value() / edges;
}

MixingEstimate estimate_mixing_time(const Graph& g, const InitSpec& init, double eps, int p, int q,
                                    int trials, std::uint64_t seed, long long t_max, double stride,
                                    std::uint64_t stream_offset) {
    if (trials < 1) throw std::invalid_argument("estimate_mixing_time: trials >= 1 required");
    if (eps <= 0.0) throw std::invalid_argument("estimate_mixing_time: eps > 0 required");
    if (t_max < 0) throw std::invalid_argument("estimate_mixing_time: t_max >= 0 required");
    if ((p != 1 && p != 2) || (q != 1 && q != 2))
        throw std::invalid_argument("estimate_mixing_time: p, q in {1, 2}");
    if (stride < 1.0 + 1e-9) throw std::invalid_argument("estimate_mixing_time: stride > 1 required");

    const StateVector initial = init_state(g, init);
    {
        Distance d0 = distance_to_mean(initial.values, 0.0, p);
        if (std::abs(d0.norm - 1.0) > 1e-6)
            throw std::invalid_argument("estimate_mixing_time: initialization is not on the unit L^" +
                                        std::to_string(p) + " sphere");
    }

    std::vector<long long> grid{0};
    while (grid.back() < t_max) {
        long long t = grid.back();
        long long next = std::max(t + 1, static_cast<long long>(std::llround(t * stride)));
        grid.push_back(std::min(next, t_max));
    }
    const size_t npts = grid.size();

    auto one_trial = [&](int k) {
        RngStream rng(seed, stream_offset + static_cast<std::uint64_t>(k));
        StateVector s = initial;
        std::vector<double> stats(npts);
        size_t gi = 0;
        stats[gi++] = distance_to_mean(s, q).power;
        for (long long t = 1; t <= t_max && gi < npts; ++t) {
            step_average(s, g, rng);
            if (t == grid[gi]) stats[gi++] = distance_to_mean(s, q).power;
        }
        return stats;
    };
    std::vector<std::vector<double>> per_trial = run_indexed<std::vector<double>>(trials, one_trial);

    MixingEstimate est;
    est.epsilon = eps;
    est.p = p;
    est.q = q;
    est.trials = trials;
    est.t_max = t_max;
    est.seed = seed;
    est.curve.resize(npts);
    for (size_t i = 0; i < npts; ++i) {
        MeanAccumulator acc;
        for (int k = 0; k < trials; ++k) acc.add(per_trial[k][i]);
        double mp = acc.mean();
        double se = acc.stderror();
        CurvePoint pt;
        pt.t = grid[i];
        pt.trials = trials;
        if (q == 1) {
            pt.mean = mp;
            pt.stderr_ = se;
        } else {
            pt.mean = std::sqrt(std::max(mp, 0.0));
            pt.stderr_ = pt.mean > 0.0 ? se / (2.0 * pt.mean) : 0.0;
        }
        est.curve[i] = pt;
    }
    for (size_t i = 0; i + 1 < npts; ++i) {
        if (est.curve[i + 1].mean > est.curve[i].mean + 1e-9)
            throw std::logic_error("estimate_mixing_time: statistic curve increased");
    }
    for (size_t i = 0; i < npts; ++i) {
        if (est.curve[i].mean <= eps) {
            est.converged = true;
            if (i == 0) {
                est.t_interp = 0.0;
                est.t_hat = 0;
            } else {
                double m0 = est.curve[i - 1].mean, m1 = est.curve[i].mean;
                double t0 = static_cast<double>(est.curve[i - 1].t);
                double t1 = static_cast<double>(est.curve[i].t);
                est.t_interp = m0 > m1 ? t0 + (m0 - eps) * (t1 - t0) / (m0 - m1) : t1;
                est.t_hat = static_cast<long long>(std::ceil(est.t_interp - 1e-9));
            }
            break;
        }
    }
    return est;
}

CoveringEstimate estimate_covering_time(const Graph& g, int corner, double alpha, int trials,
                                        std::uint64_t seed) {
    if (alpha <= 0.0 || alpha > 1.0)
        throw std::invalid_argument("estimate_covering_time: alpha in (0, 1] required");
    if (corner < 0 || corner >= g.n)
        throw std::invalid_argument("estimate_covering_time: corner out of range");
    const double target = alpha * g.n;
    const long long cap = 1LL << 40;

    auto one_trial = [&](int k) {
        RngStream rng(seed, static_cast<std::uint64_t>(k));
        std::vector<double> v(g.n, 0.0);
        v[corner] = 1.0;
        int nonzero = 1;
        long long t = 0;
        while (nonzero < target) {
            Edge e = sample_edge(g, rng);
            double a = v[e.u], b = v[e.v];
            if (a != 0.0 || b != 0.0) {
                nonzero += (a == 0.0) + (b == 0.0);
                double m = 0.5 * (a + b);
                v[e.u] = m;
                v[e.v] = m;
            }
            if (++t > cap) throw std::runtime_error("estimate_covering_time: step cap exceeded");
        }
        return static_cast<double>(t);
    };
    std::vector<double> times = run_indexed<double>(trials, one_trial);

    MeanAccumulator acc;
    for (double t : times) acc.add(t);
    CoveringEstimate est;
    est.alpha = alpha;
    est.corner = corner;
    est.mean = acc.mean();
    est.stderr_ = acc.stderror();
    est.trials = trials;
    est.seed = seed;
    return est;
}

FlowSummary flow_summary(const Graph& path_graph, long long steps, std::uint64_t seed,
                         std::uint64_t stream) {
    if (path_graph.family != Family::path)
        throw std::invalid_argument("flow_summary: requires a path graph");
    RngStream rng(seed, stream);
    StateVector s = init_state(path_graph, InitSpec{});
    KahanSum cumulative;
    double min_flow = 0.0;
    for (long long t = 0; t < steps; ++t) {
        Edge e = sample_edge(path_graph, rng);
        double flow = 0.5 * (s.values[e.u] - s.values[e.v]); // e.u < e.v on a path
        min_flow = std::min(min_flow, flow);
        cumulative.add(flow);
        double m = 0.5 * (s.values[e.u] + s.values[e.v]);
        s.values[e.u] = m;
        s.values[e.v] = m;
        ++s.step;
    }
    FlowSummary out;
    out.steps = steps;
    out.cumulative = cumulative.value();
    out.min_step_flow = min_flow;
    out.final_l1 = distance_to_mean(s, 1).norm;
    return out;
}

double q_functional(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    KahanSum acc;
    for (int i = 0; i < n; ++i) acc.add(static_cast<double>(n - i) * x[i]);
    return acc.value();
}

double q_functional(const SplitSystem& sys) {
    KahanSum acc;
    for (const auto& w : sys.sequences)
        for (int i = 0; i < sys.n; ++i) acc.add(static_cast<double>(sys.n - i) * w[i]);
    return acc.value();
}

BoundReport bound_report(const Graph& g, const SpectralSummary& s, double eps) {
    if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("bound_report: eps in (0, 1) required");
    const double n = static_cast<double>(g.n);
    const double gamma = s.gamma;
    const double log_inv_eps = std::log(1.0 / eps);
    BoundReport r;
    r.eps = eps;
    r.universal_lower = (1.0 - eps) / (2.0 * kLn2) * n * std::log(n);
    r.l2_lower = std::max(0.0, (2.0 * gamma - 1.0) * log_inv_eps);
    r.l2_upper = 4.0 * gamma * log_inv_eps;
    r.l1_lower = r.l2_lower;
    r.l1_upper = 4.0 * gamma * (std::log(std::sqrt(n)) + log_inv_eps);
    r.l21_lower = r.l2_lower;
    r.l21_upper = 4.0 * gamma * std::log(std::sqrt(n) / eps);
    r.l21_lower_deloc = std::max(0.0, (2.0 * gamma - 1.0) * std::log(s.delta * std::sqrt(n) / eps));
    int dmax = *std::max_element(g.degrees.begin(), g.degrees.end());
    int dmin = *std::min_element(g.degrees.begin(), g.degrees.end());
    double ratio = static_cast<double>(dmax) / dmin;
    double covered = (1.0 - eps) * n;
    r.cov_lower = covered > 1.0 ? n / (2.0 * ratio) * std::log(covered) : 0.0;
    return r;
}

BoundReport bound_report(const Graph& g, double eps) {
    return bound_report(g, spectral_summary(g), eps);
}

CornerSweep corner_sweep(const Graph& g, long long t, int trials, std::uint64_t seed) {
    if (t < 0) throw std::invalid_argument("corner_sweep: t >= 0 required");
    if (trials < 1) throw std::invalid_argument("corner_sweep: trials >= 1 required");
    auto one = [&](int idx) {
        int corner = idx / trials;
        int trial = idx % trials;
        RngStream rng(seed, static_cast<std::uint64_t>(idx));
        (void)trial;
        std::vector<double> v(g.n, 0.0);
        v[corner] = 1.0;
        StateVector s = make_state(std::move(v));
        run(s, g, t, rng);
        return distance_to_mean(s, 1).norm;
    };
    std::vector<double> stats = run_indexed<double>(g.n * trials, one);

    CornerSweep out;
    out.t = t;
    out.trials = trials;
    out.mean.resize(g.n);
    out.stderr_.resize(g.n);
    for (int c = 0; c < g.n; ++c) {
        MeanAccumulator acc;
        for (int k = 0; k < trials; ++k) acc.add(stats[static_cast<size_t>(c) * trials + k]);
        out.mean[c] = acc.mean();
        out.stderr_[c] = acc.stderror();
    }
    out.argmax = static_cast<int>(std::max_element(out.mean.begin(), out.mean.end()) -
                                  out.mean.begin());
    return out;
}

} // namespace avgmix
