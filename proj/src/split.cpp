#include "avgmix/split.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "avgmix/stats.hpp"

namespace avgmix {

namespace {

void check_monotone(const std::vector<double>& w, const char* what) {
    if (w.empty() || w.back() < 0.0)
        throw std::logic_error(std::string(what) + ": negative entry in split sequence");
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] < w[i + 1])
            throw std::logic_error(std::string(what) + ": split sequence not non-increasing");
}

bool all_zero(const std::vector<double>& w) {
    for (double x : w)
        if (x != 0.0) return false;
    return true;
}

} // namespace

SplitSystem make_split_system(std::vector<double> initial) {
    if (initial.size() < 3) throw std::invalid_argument("split system: cycle length >= 3 required");
    check_monotone(initial, "make_split_system");
    SplitSystem sys;
    sys.n = static_cast<int>(initial.size());
    if (!all_zero(initial)) sys.sequences.push_back(std::move(initial));
    return sys;
}

std::vector<std::vector<double>> split_apply(const std::vector<double>& w, int edge_index) {
    const int n = static_cast<int>(w.size());
    if (edge_index < 0 || edge_index >= n) throw std::invalid_argument("split_apply: bad edge index");

    if (edge_index < n - 1) {
        std::vector<double> out = w;
        double m = 0.5 * (out[edge_index] + out[edge_index + 1]);
        out[edge_index] = m;
        out[edge_index + 1] = m;
        return {std::move(out)};
    }

    // Wrap-around edge (n, 1).
    double m = 0.5 * (w[0] + w[n - 1]);
    if (m >= w[1]) {
        std::vector<double> fresh(n);
        fresh[0] = m;
        fresh[1] = m;
        for (int i = 1; i <= n - 2; ++i) fresh[i + 1] = w[i];
        check_monotone(fresh, "split_apply");
        return {std::move(fresh)};
    }
    // Split at the last position still above the wrap average.
    int k0 = 1;
    for (int i = 2; i <= n - 2; ++i)
        if (w[i] > m) k0 = i;
    std::vector<double> upper(n), lower(n, 0.0);
    for (int i = 0; i <= k0 + 1; ++i) upper[i] = m;
    for (int i = k0 + 1; i <= n - 2; ++i) upper[i + 1] = w[i];
    for (int i = 1; i <= k0; ++i) lower[i - 1] = w[i] - m;
    check_monotone(upper, "split_apply");
    check_monotone(lower, "split_apply");
    return {std::move(upper), std::move(lower)};
}

void split_step(SplitSystem& sys, RngStream& rng) {
    const size_t live = sys.sequences.size();
    for (size_t s = 0; s < live; ++s) {
        int u = rng.uniform_int(sys.n);
        std::vector<std::vector<double>> result = split_apply(sys.sequences[s], u);
        sys.sequences[s] = std::move(result[0]);
        if (result.size() == 2 && !all_zero(result[1]))
            sys.sequences.push_back(std::move(result[1]));
    }
    ++sys.step;
}

std::vector<double> split_aggregate(const SplitSystem& sys) {
    std::vector<double> agg(sys.n, 0.0);
    for (int i = 0; i < sys.n; ++i) {
        KahanSum acc;
        for (const auto& w : sys.sequences) acc.add(w[i]);
        agg[i] = acc.value();
    }
    return agg;
}

double split_l1_statistic(const SplitSystem& sys) {
    KahanSum total;
    for (const auto& w : sys.sequences) {
        KahanSum sum;
        for (double x : w) sum.add(x);
        double mean = sum.value() / sys.n;
        for (double x : w) total.add(std::abs(x - mean));
    }
    return total.value();
}

} // namespace avgmix
