#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "avgmix/analysis.hpp"

namespace avgmix {

// Default simulation horizon: 20 * gamma * log(n / eps), comfortably above
// every closed-form upper bound on the mixing time.
long long default_t_max(const SpectralSummary& s, double eps);

// Slowed pair-process comparison against the complete graph on the same
// node count. Both runs of a trial consume the same pair stream.
struct SlowedCompare {
    long long horizon = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<double> mean_complete; // mean T_K(t), t = 1..horizon
    std::vector<double> mean_graph;    // mean T_G(t)
    std::vector<double> se_diff;       // standard error of T_G(t) - T_K(t)
};

SlowedCompare slowed_compare(const Graph& g, const InitSpec& init, long long horizon, int trials,
                             std::uint64_t seed);

// Averaging process vs the splitting process on the cycle C_n from e_1,
// with independent trial streams for the two processes.
struct SplitCompare {
    int n = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<long long> checkpoints;
    std::vector<double> mean_T;      // averaging process L1 statistic
    std::vector<double> se_T;
    std::vector<double> mean_Tsplit; // splitting process statistic
    std::vector<double> se_Tsplit;
    double q_initial = 0.0;          // Q of the starting sequence
    bool q_monotone = true;          // Q never increased on any trajectory
    double max_mass_error = 0.0;     // worst |sum(aggregate) - 1| seen
};

SplitCompare split_compare(int n, const std::vector<long long>& checkpoints, int trials,
                           std::uint64_t seed);

// Single-trajectory dump: "t,norm_l1,norm_l2sq,entropy,aug_entropy" rows
// every `stride` steps (plus t = 0). Entropy columns are written as nan
// when the state is not a probability vector.
void trajectory_dump(std::ostream& out, const Graph& g, const InitSpec& init, long long steps,
                     long long stride, std::uint64_t seed);

// One row of a scaling-table experiment.
struct TableRow {
    std::string family;
    long long size_param = 0;
    int nodes = 0;
    long long edges = 0;
    double gamma = 0.0;
    double delta = 0.0;
    MixingEstimate estimate;
    BoundReport bounds;
    std::string init;
};

// table 1: L1 mixing magnitudes for expander / star / dumbbell / cycle.
// table 2: L2 mixing for complete / btree / star / cycle vs the spectral sandwich.
// table 3: L2->L1 mixing for the same families vs the delocalized bounds.
std::vector<TableRow> run_table(int which, const std::vector<long long>& sizes, double eps,
                                int trials, std::uint64_t seed, long long t_max_override = 0);

} // namespace avgmix
