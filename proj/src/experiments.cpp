#include "avgmix/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "avgmix/parallel.hpp"
#include "avgmix/report.hpp"
#include "avgmix/stats.hpp"

namespace avgmix {

long long default_t_max(const SpectralSummary& s, double eps) {
    double t = 20.0 * s.gamma * std::log(static_cast<double>(s.n) / eps);
    return std::max<long long>(10, static_cast<long long>(std::ceil(t)));
}

SlowedCompare slowed_compare(const Graph& g, const InitSpec& init, long long horizon, int trials,
                             std::uint64_t seed) {
    if (horizon < 1 || trials < 1) throw std::invalid_argument("slowed_compare: bad arguments");
    const Graph complete = make_graph("complete:" + std::to_string(g.n));
    const StateVector initial = init_state(g, init);

    struct TrialCurves {
        std::vector<double> k, g;
    };
    auto one_trial = [&](int k) {
        TrialCurves out;
        out.k.resize(horizon);
        out.g.resize(horizon);
        {
            RngStream rng(seed, static_cast<std::uint64_t>(k));
            StateVector s = initial;
            for (long long t = 0; t < horizon; ++t) {
                step_slowed(s, g, rng);
                out.g[t] = distance_to_mean(s, 1).norm;
            }
        }
        {
            // Same pair stream replayed on the complete graph.
            RngStream rng(seed, static_cast<std::uint64_t>(k));
            StateVector s = initial;
            for (long long t = 0; t < horizon; ++t) {
                step_slowed(s, complete, rng);
                out.k[t] = distance_to_mean(s, 1).norm;
            }
        }
        return out;
    };
    std::vector<TrialCurves> curves = run_indexed<TrialCurves>(trials, one_trial);

    SlowedCompare out;
    out.horizon = horizon;
    out.trials = trials;
    out.seed = seed;
    out.mean_complete.resize(horizon);
    out.mean_graph.resize(horizon);
    out.se_diff.resize(horizon);
    for (long long t = 0; t < horizon; ++t) {
        MeanAccumulator mk, mg, diff;
        for (int k = 0; k < trials; ++k) {
            mk.add(curves[k].k[t]);
            mg.add(curves[k].g[t]);
            diff.add(curves[k].g[t] - curves[k].k[t]);
        }
        out.mean_complete[t] = mk.mean();
        out.mean_graph[t] = mg.mean();
        out.se_diff[t] = diff.stderror();
    }
    return out;
}

SplitCompare split_compare(int n, const std::vector<long long>& checkpoints, int trials,
                           std::uint64_t seed) {
    if (n < 3 || trials < 1 || checkpoints.empty())
        throw std::invalid_argument("split_compare: bad arguments");
    for (size_t i = 0; i + 1 < checkpoints.size(); ++i)
        if (checkpoints[i] >= checkpoints[i + 1])
            throw std::invalid_argument("split_compare: checkpoints must increase");

    const Graph cycle = make_graph("cycle:" + std::to_string(n));
    const long long horizon = checkpoints.back();
    const size_t ncp = checkpoints.size();

    auto averaging_trial = [&](int k) {
        RngStream rng(seed, static_cast<std::uint64_t>(k));
        std::vector<double> v(n, 0.0);
        v[0] = 1.0;
        StateVector s = make_state(std::move(v));
        std::vector<double> stats(ncp);
        size_t ci = 0;
        for (long long t = 1; t <= horizon && ci < ncp; ++t) {
            step_average(s, cycle, rng);
            if (t == checkpoints[ci]) stats[ci++] = distance_to_mean(s, 1).norm;
        }
        return stats;
    };

    struct SplitTrial {
        std::vector<double> stats;
        bool q_monotone = true;
        double mass_err = 0.0;
    };
    auto split_trial = [&](int k) {
        // Streams disjoint from the averaging trials.
        RngStream rng(seed, static_cast<std::uint64_t>(trials + k));
        std::vector<double> e1(n, 0.0);
        e1[0] = 1.0;
        SplitSystem sys = make_split_system(std::move(e1));
        SplitTrial out;
        out.stats.resize(ncp);
        double q_prev = q_functional(sys);
        size_t ci = 0;
        for (long long t = 1; t <= horizon && ci < ncp; ++t) {
            split_step(sys, rng);
            double q = q_functional(sys);
            if (q > q_prev + 1e-12) out.q_monotone = false;
            q_prev = q;
            if (t == checkpoints[ci]) {
                out.stats[ci++] = split_l1_statistic(sys);
                KahanSum mass;
                for (double x : split_aggregate(sys)) mass.add(x);
                out.mass_err = std::max(out.mass_err, std::abs(mass.value() - 1.0));
            }
        }
        return out;
    };

    std::vector<std::vector<double>> avg = run_indexed<std::vector<double>>(trials, averaging_trial);
    std::vector<SplitTrial> spl = run_indexed<SplitTrial>(trials, split_trial);

    SplitCompare out;
    out.n = n;
    out.trials = trials;
    out.seed = seed;
    out.checkpoints = checkpoints;
    out.q_initial = static_cast<double>(n);
    out.mean_T.resize(ncp);
    out.se_T.resize(ncp);
    out.mean_Tsplit.resize(ncp);
    out.se_Tsplit.resize(ncp);
    for (size_t c = 0; c < ncp; ++c) {
        MeanAccumulator ma, ms;
        for (int k = 0; k < trials; ++k) {
            ma.add(avg[k][c]);
            ms.add(spl[k].stats[c]);
        }
        out.mean_T[c] = ma.mean();
        out.se_T[c] = ma.stderror();
        out.mean_Tsplit[c] = ms.mean();
        out.se_Tsplit[c] = ms.stderror();
    }
    for (const SplitTrial& st : spl) {
        out.q_monotone = out.q_monotone && st.q_monotone;
        out.max_mass_error = std::max(out.max_mass_error, st.mass_err);
    }
    return out;
}

void trajectory_dump(std::ostream& out, const Graph& g, const InitSpec& init, long long steps,
                     long long stride, std::uint64_t seed) {
    if (steps < 0 || stride < 1) throw std::invalid_argument("trajectory_dump: bad arguments");
    StateVector s = init_state(g, init);
    bool probability = true;
    {
        KahanSum sum;
        for (double x : s.values) {
            if (x < 0.0) probability = false;
            sum.add(x);
        }
        if (std::abs(sum.value() - 1.0) > 1e-9) probability = false;
    }
    std::vector<double> beta;
    if (probability) beta = solve_beta(g);

    auto row = [&](long long t) {
        Distance d1 = distance_to_mean(s, 1);
        Distance d2 = distance_to_mean(s, 2);
        out << t << ',' << fmt_double(d1.norm) << ',' << fmt_double(d2.power) << ',';
        if (probability) {
            double S = entropy(s.values);
            out << fmt_double(S) << ',' << fmt_double(augmented_entropy(s.values, beta));
        } else {
            out << "nan,nan";
        }
        out << '\n';
    };

    out << "t,norm_l1,norm_l2sq,entropy,aug_entropy\n";
    row(0);
    RngStream rng(seed, 0);
    for (long long t = 1; t <= steps; ++t) {
        step_average(s, g, rng);
        if (t % stride == 0 || t == steps) row(t);
    }
}

namespace {

long long snap_btree(long long size) {
    long long n = 3;
    while (2 * n + 1 <= size) n = 2 * n + 1;
    return n;
}

} // namespace

std::vector<TableRow> run_table(int which, const std::vector<long long>& sizes, double eps,
                                int trials, std::uint64_t seed, long long t_max_override) {
    if (which < 1 || which > 3) throw std::invalid_argument("run_table: table 1, 2 or 3");
    if (sizes.empty()) throw std::invalid_argument("run_table: no sizes given");

    std::vector<std::string> families;
    if (which == 1)
        families = {"regular", "star", "dumbbell", "cycle"};
    else
        families = {"complete", "btree", "star", "cycle"};

    std::vector<TableRow> rows;
    for (const std::string& fam : families) {
        for (long long size : sizes) {
            GraphSpec spec;
            if (fam == "regular") {
                spec = GraphSpec::parse("regular:" + std::to_string(size) + ",4," +
                                        std::to_string(seed));
            } else if (fam == "btree") {
                spec = GraphSpec::parse("btree:" + std::to_string(snap_btree(size)));
            } else {
                spec = GraphSpec::parse(fam + ":" + std::to_string(size));
            }
            Graph g = make_graph(spec);
            SpectralSummary summary = spectral_summary(g);

            TableRow row;
            row.family = fam;
            row.size_param = spec.n;
            row.nodes = g.n;
            row.edges = g.edge_count();
            row.gamma = summary.gamma;
            row.delta = summary.delta;
            row.bounds = bound_report(g, summary, eps);

            InitSpec init;
            int p = 1, q = 1;
            if (which == 1) {
                init.kind = InitSpec::Kind::corner;
                init.index = (fam == "star") ? 1 : 0; // star is slowest from a leaf
            } else {
                init.kind = InitSpec::Kind::fiedler;
                p = 2;
                q = (which == 2) ? 2 : 1;
            }
            row.init = init.to_string();
            long long t_max = t_max_override > 0 ? t_max_override : default_t_max(summary, eps);
            row.estimate = estimate_mixing_time(g, init, eps, p, q, trials, seed, t_max);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace avgmix
