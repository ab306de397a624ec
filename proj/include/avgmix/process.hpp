#pragma once

#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "avgmix/graph.hpp"
#include "avgmix/rng.hpp"

namespace avgmix {

// Node labeling v(t) together with the conserved target mean and step count.
struct StateVector {
    std::vector<double> values;
    double mean = 0.0; // (sum of v(0)) / n, fixed at initialization
    long long step = 0;
};

// Initialization grammar:
//   corner:i     -> e_i
//   vector:path  -> whitespace-separated doubles, one per node
//   fiedler      -> unit-L2 Fiedler vector
//   fiedler-l1   -> Fiedler vector scaled to ||.||_1 = 1
//   signed-split -> the 0/+a/-a split vector (center or root exempt for
//                   star/btree, plain half split otherwise), unit L2
struct InitSpec {
    enum class Kind { corner, vector_file, fiedler, fiedler_l1, signed_split };
    Kind kind = Kind::corner;
    int index = 0;
    std::string path;

    static InitSpec parse(const std::string& text);
    std::string to_string() const;
};

StateVector make_state(std::vector<double> values);
StateVector init_state(const Graph& g, const InitSpec& spec);

// One averaging move: both endpoints of a uniformly random edge are
// replaced by their average. Returns the chosen edge.
inline Edge step_average(StateVector& s, const Graph& g, RngStream& rng) {
    Edge e = sample_edge(g, rng);
    double m = 0.5 * (s.values[e.u] + s.values[e.v]);
    s.values[e.u] = m;
    s.values[e.v] = m;
    ++s.step;
    return e;
}

struct PairStep {
    int i = 0;
    int j = 0;
    bool acted = false;
};

// Slowed pair process: a uniform node pair is drawn from all n-choose-2
// pairs; the averaging move happens only when the pair is an edge.
inline PairStep step_slowed(StateVector& s, const Graph& g, RngStream& rng) {
    const long long pairs = static_cast<long long>(g.n) * (g.n - 1) / 2;
    long long m = static_cast<long long>(rng.uniform_below(static_cast<std::uint64_t>(pairs)));
    int i = 0;
    long long row = g.n - 1;
    while (m >= row) {
        m -= row;
        --row;
        ++i;
    }
    int j = i + 1 + static_cast<int>(m);
    PairStep out{i, j, false};
    if (g.has_edge(i, j)) {
        double avg = 0.5 * (s.values[i] + s.values[j]);
        s.values[i] = avg;
        s.values[j] = avg;
        out.acted = true;
    }
    ++s.step;
    return out;
}

// Applies `steps` averaging moves, invoking the observer after each one as
// observer(t, state, edge). An observer returning bool may abort the run by
// returning false. Deterministic for a given stream.
template <class Observer>
void run(StateVector& s, const Graph& g, long long steps, RngStream& rng, Observer&& observer) {
    for (long long k = 0; k < steps; ++k) {
        Edge e = step_average(s, g, rng);
        if constexpr (std::is_same_v<std::invoke_result_t<Observer&, long long, const StateVector&, Edge>, bool>) {
            if (!observer(s.step, s, e)) return;
        } else {
            observer(s.step, s, e);
        }
    }
}

inline void run(StateVector& s, const Graph& g, long long steps, RngStream& rng) {
    run(s, g, steps, rng, [](long long, const StateVector&, Edge) {});
}

} // namespace avgmix
