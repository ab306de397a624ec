#pragma once

#include <vector>

#include "avgmix/rng.hpp"

namespace avgmix {

// State of the cycle splitting process: a collection of non-increasing,
// non-negative length-n sequences whose componentwise sum is the tracked
// aggregate. One step advances every live sequence independently with its
// own uniform edge draw; the wrap-around edge either prepends the average
// or splits the sequence in two, preserving monotonicity and total mass.
struct SplitSystem {
    int n = 0;
    long long step = 0;
    std::vector<std::vector<double>> sequences;
};

// Validates the initial sequence (non-increasing, non-negative) and drops
// it entirely if it is all zero.
SplitSystem make_split_system(std::vector<double> initial);

// Applies one edge to one sequence. edge_index u in 0..n-1 selects the
// cycle edge (u+1, u+2 mod n) in 1-based terms; u = n-1 is the wrap-around
// edge that prepends or splits. Returns one or two sequences.
std::vector<std::vector<double>> split_apply(const std::vector<double>& w, int edge_index);

void split_step(SplitSystem& sys, RngStream& rng);

// Componentwise sum of the live sequences.
std::vector<double> split_aggregate(const SplitSystem& sys);

// Sum of L1 distances of each sequence to its own flat vector.
double split_l1_statistic(const SplitSystem& sys);

} // namespace avgmix
