#include <doctest.h>

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "avgmix/analysis.hpp"
#include "avgmix/process.hpp"
#include "avgmix/stats.hpp"

using namespace avgmix;

TEST_CASE("corner initialization") {
    Graph g = make_graph("complete:4");
    StateVector s = init_state(g, InitSpec::parse("corner:0"));
    CHECK(s.values == std::vector<double>{1, 0, 0, 0});
    CHECK(s.mean == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(init_state(g, InitSpec::parse("corner:4")), std::invalid_argument);
}

TEST_CASE("signed-split on star:5 is (0, 1/2, 1/2, -1/2, -1/2)") {
    Graph g = make_graph("star:5");
    StateVector s = init_state(g, InitSpec::parse("signed-split"));
    CHECK(s.values == std::vector<double>{0.0, 0.5, 0.5, -0.5, -0.5});
    CHECK(s.mean == 0.0);
}

TEST_CASE("signed-split is a unit L2 vector orthogonal to ones") {
    for (const char* spec : {"complete:8", "complete:9", "star:6", "btree:15", "cycle:10"}) {
        Graph g = make_graph(spec);
        StateVector s = init_state(g, InitSpec::parse("signed-split"));
        KahanSum sum, sumsq;
        for (double x : s.values) {
            sum.add(x);
            sumsq.add(x * x);
        }
        CHECK(std::abs(sum.value()) <= 1e-12);
        CHECK(std::abs(sumsq.value() - 1.0) <= 1e-12);
    }
}

TEST_CASE("fiedler initialization on C_4 is a unit vector orthogonal to ones") {
    Graph g = make_graph("cycle:4");
    StateVector s = init_state(g, InitSpec::parse("fiedler"));
    KahanSum sum, sumsq;
    for (double x : s.values) {
        sum.add(x);
        sumsq.add(x * x);
    }
    CHECK(std::abs(sum.value()) <= 1e-9);
    CHECK(std::abs(sumsq.value() - 1.0) <= 1e-10);
    CHECK(std::abs(s.mean) <= 1e-10);
}

TEST_CASE("vector-file initialization") {
    Graph g = make_graph("path:3");
    std::string path = "/tmp/avgmix_init_vec.txt";
    {
        std::ofstream f(path);
        f << "0.5 0.25\n0.25\n";
    }
    StateVector s = init_state(g, InitSpec::parse("vector:" + path));
    CHECK(s.values == std::vector<double>{0.5, 0.25, 0.25});
    CHECK(s.mean == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    SUBCASE("length mismatch is rejected") {
        Graph h = make_graph("path:4");
        CHECK_THROWS_AS(init_state(h, InitSpec::parse("vector:" + path)), std::invalid_argument);
    }
    SUBCASE("missing file is a runtime error") {
        CHECK_THROWS_AS(init_state(g, InitSpec::parse("vector:/tmp/avgmix_no_such_file")),
                        std::runtime_error);
    }
}

TEST_CASE("fiedler-l1 initialization has unit L1 norm") {
    Graph g = make_graph("path:7");
    StateVector s = init_state(g, InitSpec::parse("fiedler-l1"));
    KahanSum l1;
    for (double x : s.values) l1.add(std::abs(x));
    CHECK(std::abs(l1.value() - 1.0) <= 1e-12);
}

TEST_CASE("one averaging step on K_2 equalizes") {
    Graph g = make_graph("complete:2");
    StateVector s = init_state(g, InitSpec::parse("corner:0"));
    RngStream rng(1, 0);
    Edge e = step_average(s, g, rng);
    CHECK(e.u == 0);
    CHECK(e.v == 1);
    CHECK(s.values == std::vector<double>{0.5, 0.5});
    CHECK(s.step == 1);
}

TEST_CASE("averaging an already-equal edge changes nothing") {
    Graph g = make_graph("complete:2");
    StateVector s = make_state({0.3, 0.3});
    RngStream rng(1, 0);
    step_average(s, g, rng);
    CHECK(s.values == std::vector<double>{0.3, 0.3});
}

TEST_CASE("one step on path:3 from e_0 yields one of the two enumerable outcomes") {
    Graph g = make_graph("path:3");
    std::set<std::vector<double>> seen;
    for (std::uint64_t stream = 0; stream < 50; ++stream) {
        StateVector s = init_state(g, InitSpec::parse("corner:0"));
        RngStream rng(77, stream);
        step_average(s, g, rng);
        bool averaged_left = s.values == std::vector<double>{0.5, 0.5, 0.0};
        bool idle_right = s.values == std::vector<double>{1.0, 0.0, 0.0};
        CHECK((averaged_left || idle_right));
        seen.insert(s.values);
    }
    CHECK(seen.size() == 2);
}

TEST_CASE("slowed process idles on non-edges") {
    Graph g = make_graph("star:4");
    bool saw_idle = false, saw_act = false;
    RngStream rng(9, 0);
    StateVector s = init_state(g, InitSpec::parse("corner:0"));
    for (int i = 0; i < 200; ++i) {
        std::vector<double> before = s.values;
        PairStep ps = step_slowed(s, g, rng);
        if (!ps.acted) {
            saw_idle = true;
            CHECK(ps.i >= 1); // leaf-leaf pair
            CHECK(s.values == before);
        } else {
            saw_act = true;
        }
    }
    CHECK(saw_idle);
    CHECK(saw_act);
}

TEST_CASE("slowed process acts with frequency |E| / C(n,2)") {
    Graph g = make_graph("star:4"); // 3 edges of 6 pairs
    RngStream rng(123, 0);
    StateVector s = make_state({1, 2, 3, 4});
    const int draws = 100000;
    int acted = 0;
    for (int i = 0; i < draws; ++i) acted += step_slowed(s, g, rng).acted;
    double p = 0.5;
    double sigma = std::sqrt(p * (1 - p) / draws);
    CHECK(std::abs(static_cast<double>(acted) / draws - p) <= 3.0 * sigma);
}

TEST_CASE("run is deterministic and supports abort") {
    Graph g = make_graph("cycle:8");
    SUBCASE("zero steps returns the input") {
        StateVector s = init_state(g, InitSpec::parse("corner:3"));
        RngStream rng(4, 0);
        run(s, g, 0, rng);
        CHECK(s.values[3] == 1.0);
        CHECK(s.step == 0);
    }
    SUBCASE("identical seeds give bit-identical trajectories") {
        StateVector a = init_state(g, InitSpec::parse("corner:0"));
        StateVector b = init_state(g, InitSpec::parse("corner:0"));
        RngStream ra(55, 2), rb(55, 2);
        run(a, g, 5000, ra);
        run(b, g, 5000, rb);
        CHECK(a.values == b.values);
    }
    SUBCASE("an observer returning false stops the run") {
        StateVector s = init_state(g, InitSpec::parse("corner:0"));
        RngStream rng(4, 0);
        run(s, g, 100, rng, [](long long t, const StateVector&, Edge) { return t < 5; });
        CHECK(s.step == 5);
    }
}

TEST_CASE("mass is conserved to 1e-12 relative over a million steps") {
    Graph g = make_graph("cycle:16");
    StateVector s = init_state(g, InitSpec::parse("corner:0"));
    RngStream rng(808, 0);
    run(s, g, 1000000, rng);
    KahanSum sum;
    for (double x : s.values) sum.add(x);
    CHECK(std::abs(sum.value() - 1.0) <= 1e-12);
    for (double x : s.values) CHECK(x >= 0.0);
}

TEST_CASE("shared edge streams preserve linear combinations pathwise") {
    Graph g = make_graph("star:8");
    const double lambda[3] = {0.5, 0.25, 0.25};
    const int corners[3] = {0, 1, 2};
    const long long steps = 2000;

    std::vector<StateVector> parts;
    for (int c : corners) parts.push_back(init_state(g, InitSpec::parse("corner:" + std::to_string(c))));
    std::vector<double> mix(g.n, 0.0);
    for (int k = 0; k < 3; ++k) mix[corners[k]] += lambda[k];
    StateVector combined = make_state(std::move(mix));

    std::vector<RngStream> streams(4, RngStream(321, 9));
    for (long long t = 0; t < steps; ++t) {
        for (int k = 0; k < 3; ++k) step_average(parts[k], g, streams[k]);
        step_average(combined, g, streams[3]);
    }
    double l1_combined = distance_to_mean(combined, 1).norm;
    KahanSum rhs;
    for (int k = 0; k < 3; ++k) rhs.add(lambda[k] * distance_to_mean(parts[k], 1).norm);
    for (int i = 0; i < g.n; ++i) {
        double want = lambda[0] * parts[0].values[i] + lambda[1] * parts[1].values[i] +
                      lambda[2] * parts[2].values[i];
        CHECK(std::abs(combined.values[i] - want) <= 1e-12);
    }
    CHECK(l1_combined <= rhs.value() + 1e-12);
}
