#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "avgmix/experiments.hpp"
#include "avgmix/stats.hpp"

using namespace avgmix;

namespace {

// One-step expectation by full edge enumeration.
std::vector<double> enumerate_one_step(const Graph& g, const std::vector<double>& v) {
    std::vector<KahanSum> acc(v.size());
    for (const Edge& e : g.edges) {
        std::vector<double> w = v;
        double m = 0.5 * (w[e.u] + w[e.v]);
        w[e.u] = m;
        w[e.v] = m;
        for (size_t i = 0; i < w.size(); ++i) acc[i].add(w[i]);
    }
    std::vector<double> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = acc[i].value() / static_cast<double>(g.edge_count());
    return out;
}

} // namespace

TEST_CASE("edge enumeration equals one application of the averaging matrix") {
    RngStream rng(515, 0);
    for (const char* spec : {"path:5", "star:6", "cycle:7", "dumbbell:3", "btree:7"}) {
        Graph g = make_graph(spec);
        std::vector<double> M = averaging_matrix(g);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> v(g.n);
            for (double& x : v) x = rng.uniform01();
            std::vector<double> lhs = enumerate_one_step(g, v);
            for (int i = 0; i < g.n; ++i) {
                KahanSum mv;
                for (int j = 0; j < g.n; ++j) mv.add(M[static_cast<size_t>(i) * g.n + j] * v[j]);
                CHECK(std::abs(lhs[i] - mv.value()) <= 1e-12);
            }
        }
    }
}

TEST_CASE("first-step L2 decay from the Fiedler vector matches 1 - 1/(2 gamma)") {
    for (const char* spec : {"star:8", "cycle:8", "dumbbell:3"}) {
        Graph g = make_graph(spec);
        SpectralSummary s = spectral_summary(g);
        StateVector init = init_state(g, InitSpec::parse("fiedler"));
        MeanAccumulator acc;
        const int trials = 20000;
        for (int k = 0; k < trials; ++k) {
            RngStream rng(92, static_cast<std::uint64_t>(k));
            StateVector v = init;
            step_average(v, g, rng);
            acc.add(distance_to_mean(v, 2).power);
        }
        double want = 1.0 - 1.0 / (2.0 * s.gamma);
        CHECK(std::abs(acc.mean() - want) <= 3.0 * acc.stderror());
    }
}

TEST_CASE("K_16 L2 decay follows the exact geometric curve") {
    Graph g = make_graph("complete:16");
    StateVector init = init_state(g, InitSpec::parse("fiedler"));
    const int trials = 4000;
    const int horizon = 30;
    std::vector<MeanAccumulator> acc(horizon + 1);
    for (int k = 0; k < trials; ++k) {
        RngStream rng(56, static_cast<std::uint64_t>(k));
        StateVector v = init;
        acc[0].add(distance_to_mean(v, 2).power);
        for (int t = 1; t <= horizon; ++t) {
            step_average(v, g, rng);
            acc[t].add(distance_to_mean(v, 2).power);
        }
    }
    double rate = 1.0 - 1.0 / 15.0;
    for (int t = 0; t <= horizon; ++t) {
        double want = std::pow(rate, t);
        CHECK(std::abs(acc[t].mean() - want) <= 3.0 * acc[t].stderror() + 1e-12);
    }
}

TEST_CASE("slowed pair process: the complete graph dominates at every step") {
    Graph g = make_graph("star:8");
    SlowedCompare cmp = slowed_compare(g, InitSpec::parse("corner:0"), 100, 3000, 1001);
    for (long long t = 0; t < cmp.horizon; ++t)
        CHECK(cmp.mean_complete[t] <= cmp.mean_graph[t] + 2.0 * cmp.se_diff[t] + 1e-12);
}

TEST_CASE("splitting process dominates the averaging process on C_8") {
    SplitCompare cmp = split_compare(8, {5, 20}, 800, 2002);
    CHECK(cmp.q_initial == 8.0);
    CHECK(cmp.q_monotone);
    CHECK(cmp.max_mass_error == 0.0);
    for (size_t i = 0; i < cmp.checkpoints.size(); ++i)
        CHECK(cmp.mean_T[i] <= cmp.mean_Tsplit[i] + 2.0 * (cmp.se_T[i] + cmp.se_Tsplit[i]));
}

TEST_CASE("mixing curve brackets the reported crossing") {
    Graph g = make_graph("star:16");
    MixingEstimate est =
        estimate_mixing_time(g, InitSpec::parse("corner:1"), 0.5, 1, 1, 60, 11, 2000);
    REQUIRE(est.converged);
    size_t cross = 0;
    while (est.curve[cross].mean > est.epsilon) ++cross;
    REQUIRE(cross > 0);
    CHECK(est.t_interp <= est.curve[cross].t);
    CHECK(est.t_interp >= est.curve[cross - 1].t);
    CHECK(est.t_hat >= est.t_interp);
    for (size_t i = 0; i + 1 < est.curve.size(); ++i)
        CHECK(est.curve[i + 1].mean <= est.curve[i].mean + 1e-9);
}

TEST_CASE("default horizon clears the closed-form upper bound") {
    Graph g = make_graph("cycle:12");
    SpectralSummary s = spectral_summary(g);
    BoundReport b = bound_report(g, s, 0.25);
    CHECK(static_cast<double>(default_t_max(s, 0.25)) >= 2.0 * b.l1_upper);
}

TEST_CASE("results are independent of the worker count") {
    Graph g = make_graph("star:12");
    MixingEstimate serial =
        estimate_mixing_time(g, InitSpec::parse("corner:1"), 0.5, 1, 1, 16, 77, 500);
    setenv("AVGMIX_THREADS", "3", 1);
    MixingEstimate pooled =
        estimate_mixing_time(g, InitSpec::parse("corner:1"), 0.5, 1, 1, 16, 77, 500);
    unsetenv("AVGMIX_THREADS");
    CHECK(serial.t_interp == pooled.t_interp);
    REQUIRE(serial.curve.size() == pooled.curve.size());
    for (size_t i = 0; i < serial.curve.size(); ++i) {
        CHECK(serial.curve[i].mean == pooled.curve[i].mean);
        CHECK(serial.curve[i].stderr_ == pooled.curve[i].stderr_);
    }
}

TEST_CASE("table driver emits one row per family and size") {
    std::vector<TableRow> rows = run_table(2, {8, 16}, 0.2, 4, 5, 400);
    CHECK(rows.size() == 8);
    for (const TableRow& r : rows) {
        CHECK(r.gamma > 0.0);
        CHECK(r.estimate.p == 2);
        CHECK(r.estimate.q == 2);
        if (r.family == "btree") CHECK((r.size_param == 7 || r.size_param == 15));
    }
}

TEST_CASE("table 3 measures the L2-to-L1 statistic") {
    std::vector<TableRow> rows = run_table(3, {8}, 0.2, 6, 5, 600);
    CHECK(rows.size() == 4);
    for (const TableRow& r : rows) {
        CHECK(r.estimate.p == 2);
        CHECK(r.estimate.q == 1);
        CHECK(r.bounds.l21_lower <= r.bounds.l21_upper);
        if (r.estimate.converged) {
            // The L1 statistic from an L2-unit start begins at ||u_2||_1 >= 1.
            CHECK(r.estimate.curve[0].mean >= 1.0 - 1e-9);
        }
    }
}
