#pragma once

#include <cstdint>
#include <vector>

#include "avgmix/graph.hpp"
#include "avgmix/process.hpp"
#include "avgmix/spectral.hpp"
#include "avgmix/split.hpp"

namespace avgmix {

struct Distance {
    double power = 0.0; // ||v - mean||_q^q
    double norm = 0.0;  // ||v - mean||_q
};

// Exact distance functionals with compensated summation, q in {1, 2}.
Distance distance_to_mean(const std::vector<double>& v, double mean, int q);
inline Distance distance_to_mean(const StateVector& s, int q) {
    return distance_to_mean(s.values, s.mean, q);
}

// Natural-log entropy of a probability vector; 0 log 0 = 0.
double entropy(const std::vector<double>& v);

// F(v) = S(v) + beta . v
double augmented_entropy(const std::vector<double>& v, const std::vector<double>& beta);

// slack of |S(v) - S(w)| <= ||v - w||_1 log n + 1/(e log 2); >= 0 always
double fannes_check(const std::vector<double>& v, const std::vector<double>& w);

enum class DriftFunctional { entropy, augmented_entropy, l2sq };

// Exact conditional one-step expected change of the functional, averaged
// over all |E| equally likely edges. For l2sq this is -(1/2|E|) v^T L v.
double exact_drift(const Graph& g, const std::vector<double>& v, DriftFunctional f,
                   const std::vector<double>* beta = nullptr);

struct CurvePoint {
    long long t = 0;
    double mean = 0.0;    // Def-1.1 statistic (q-th root of the mean q-power)
    double stderr_ = 0.0; // delta-method standard error of the statistic
    int trials = 0;
};

struct MixingEstimate {
    double epsilon = 0.0;
    int p = 1;
    int q = 1;
    long long t_hat = -1;  // smallest integer step with statistic <= epsilon
    double t_interp = -1;  // linear interpolation of the grid crossing
    bool converged = false;
    int trials = 0;
    long long t_max = 0;
    std::uint64_t seed = 0;
    std::vector<CurvePoint> curve;
};

// Monte Carlo estimate of the Def-1.1 mixing statistic curve and its
// epsilon crossing. Trajectories are recorded on a geometric stride grid;
// trial k uses stream id stream_offset + k of the master seed.
MixingEstimate estimate_mixing_time(const Graph& g, const InitSpec& init, double eps, int p, int q,
                                    int trials, std::uint64_t seed, long long t_max,
                                    double stride = 1.1, std::uint64_t stream_offset = 0);

struct CoveringEstimate {
    double alpha = 0.0;
    int corner = 0;
    double mean = 0.0;
    double stderr_ = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
};

// Mean first step at which at least alpha*n coordinates are nonzero,
// starting from a corner. Nonzero is the exact |v_i| > 0 test.
CoveringEstimate estimate_covering_time(const Graph& g, int corner, double alpha, int trials,
                                        std::uint64_t seed);

struct FlowSummary {
    long long steps = 0;
    double cumulative = 0.0;    // total mass moved left-to-right
    double min_step_flow = 0.0; // smallest per-step flow seen (>= 0 on a path)
    double final_l1 = 0.0;
};

// Tracks F(t) = (v_I - v_{I+1})/2 for the chosen edge (I, I+1) on a path
// graph started from the left corner.
FlowSummary flow_summary(const Graph& path_graph, long long steps, std::uint64_t seed,
                         std::uint64_t stream = 0);

// Q(x) = sum_i (n+1-i) x_i, and its value on the aggregate of a split system.
double q_functional(const std::vector<double>& x);
double q_functional(const SplitSystem& sys);

struct BoundReport {
    double eps = 0.0;
    double universal_lower = 0.0; // leading term only, asymptotic
    double l2_lower = 0.0, l2_upper = 0.0;
    double l1_lower = 0.0, l1_upper = 0.0;
    double l21_lower = 0.0, l21_upper = 0.0;
    double l21_lower_deloc = 0.0;
    double cov_lower = 0.0;
};

BoundReport bound_report(const Graph& g, const SpectralSummary& s, double eps);
BoundReport bound_report(const Graph& g, double eps);

struct CornerSweep {
    long long t = 0;
    int trials = 0;
    std::vector<double> mean;
    std::vector<double> stderr_;
    int argmax = 0;
};

// Mean ||v(t) - vbar||_1 from every corner e_i; trial streams are indexed
// by corner * trials + trial.
CornerSweep corner_sweep(const Graph& g, long long t, int trials, std::uint64_t seed);

} // namespace avgmix
