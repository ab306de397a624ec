#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "avgmix/experiments.hpp"
#include "avgmix/report.hpp"

namespace {

using avgmix::Json;

// Full experiment configuration; serialized into every JSON report so a
// run can be reproduced from its own artifact.
struct Config {
    std::string command;
    std::string graph;
    std::string init = "corner:0";
    double eps = 0.5;
    int p = 1;
    int q = 1;
    int trials = 20;
    long long t_max = 0; // 0 = auto (20 gamma log(n/eps))
    double stride = 1.1;
    std::uint64_t seed = 12345;
    double alpha = 0.75;
    int corner = 0;
    long long t = 0;
    long long steps = 1000;
    long long record_stride = 1;
    int table = 0;
    int cycle_n = 8;
    std::vector<long long> sizes;
    std::vector<long long> checkpoints{5, 20, 50};
    std::string out_json;
    std::string out_csv;
};

Json config_to_json(const Config& c) {
    Json j;
    j["version"] = avgmix::kVersion;
    j["command"] = c.command;
    j["graph"] = c.graph;
    j["init"] = c.init;
    j["eps"] = c.eps;
    j["p"] = c.p;
    j["q"] = c.q;
    j["trials"] = c.trials;
    j["t_max"] = c.t_max;
    j["stride"] = c.stride;
    j["seed"] = c.seed;
    j["alpha"] = c.alpha;
    j["corner"] = c.corner;
    j["t"] = c.t;
    j["steps"] = c.steps;
    j["record_stride"] = c.record_stride;
    j["table"] = c.table;
    j["cycle_n"] = c.cycle_n;
    j["sizes"] = c.sizes;
    j["checkpoints"] = c.checkpoints;
    return j;
}

Config config_from_json(const Json& j) {
    Config c;
    c.command = j.at("command").get<std::string>();
    c.graph = j.value("graph", std::string());
    c.init = j.value("init", std::string("corner:0"));
    c.eps = j.value("eps", 0.5);
    c.p = j.value("p", 1);
    c.q = j.value("q", 1);
    c.trials = j.value("trials", 20);
    c.t_max = j.value("t_max", 0LL);
    c.stride = j.value("stride", 1.1);
    c.seed = j.value("seed", std::uint64_t{12345});
    c.alpha = j.value("alpha", 0.75);
    c.corner = j.value("corner", 0);
    c.t = j.value("t", 0LL);
    c.steps = j.value("steps", 1000LL);
    c.record_stride = j.value("record_stride", 1LL);
    c.table = j.value("table", 0);
    c.cycle_n = j.value("cycle_n", 8);
    c.sizes = j.value("sizes", std::vector<long long>{});
    c.checkpoints = j.value("checkpoints", std::vector<long long>{5, 20, 50});
    return c;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
    f << content;
    if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

void emit(const Config& c, Json report, const std::string& csv) {
    if (!c.out_csv.empty() && !csv.empty()) write_file(c.out_csv, csv);
    std::string text = report.dump(2);
    text += '\n';
    if (!c.out_json.empty())
        write_file(c.out_json, text);
    else
        std::cout << text;
}

void run_command(Config& c) {
    auto start = std::chrono::steady_clock::now();
    Json report;
    report["config"] = nullptr;
    report["spectral"] = nullptr;
    report["bounds"] = nullptr;
    report["estimate"] = nullptr;
    std::string csv;

    if (c.command == "simulate") {
        if (c.out_csv.empty()) throw std::invalid_argument("simulate: --out-csv is required");
        avgmix::Graph g = avgmix::make_graph(c.graph);
        std::ostringstream out;
        avgmix::trajectory_dump(out, g, avgmix::InitSpec::parse(c.init), c.steps, c.record_stride,
                                c.seed);
        csv = out.str();
    } else if (c.command == "mix") {
        avgmix::Graph g = avgmix::make_graph(c.graph);
        avgmix::SpectralSummary s = avgmix::spectral_summary(g);
        report["spectral"] = avgmix::to_json(s);
        if (c.eps < 1.0) report["bounds"] = avgmix::to_json(avgmix::bound_report(g, s, c.eps));
        if (c.t_max <= 0) c.t_max = avgmix::default_t_max(s, c.eps);
        avgmix::MixingEstimate est =
            avgmix::estimate_mixing_time(g, avgmix::InitSpec::parse(c.init), c.eps, c.p, c.q,
                                         c.trials, c.seed, c.t_max, c.stride);
        report["estimate"] = avgmix::to_json(est);
        std::ostringstream out;
        avgmix::write_curve_csv(out, est);
        csv = out.str();
    } else if (c.command == "cover") {
        avgmix::Graph g = avgmix::make_graph(c.graph);
        avgmix::CoveringEstimate est =
            avgmix::estimate_covering_time(g, c.corner, c.alpha, c.trials, c.seed);
        report["estimate"] = avgmix::to_json(est);
    } else if (c.command == "bounds" || c.command == "spectral") {
        avgmix::Graph g = avgmix::make_graph(c.graph);
        avgmix::SpectralSummary s = avgmix::spectral_summary(g);
        report["spectral"] = avgmix::to_json(s);
        if (c.command == "bounds") report["bounds"] = avgmix::to_json(avgmix::bound_report(g, s, c.eps));
    } else if (c.command == "corner-sweep") {
        avgmix::Graph g = avgmix::make_graph(c.graph);
        avgmix::CornerSweep sweep = avgmix::corner_sweep(g, c.t, c.trials, c.seed);
        report["estimate"] = avgmix::to_json(sweep);
        std::ostringstream out;
        avgmix::write_corner_sweep_csv(out, sweep);
        csv = out.str();
    } else if (c.command == "cycle-split") {
        avgmix::SplitCompare cmp = avgmix::split_compare(c.cycle_n, c.checkpoints, c.trials, c.seed);
        report["estimate"] = avgmix::to_json(cmp);
        std::ostringstream out;
        avgmix::write_split_compare_csv(out, cmp);
        csv = out.str();
    } else if (c.command == "slowed-compare") {
        avgmix::Graph g = avgmix::make_graph(c.graph);
        avgmix::SlowedCompare cmp = avgmix::slowed_compare(g, avgmix::InitSpec::parse(c.init),
                                                           c.steps, c.trials, c.seed);
        report["estimate"] = avgmix::to_json(cmp);
        std::ostringstream out;
        avgmix::write_slowed_compare_csv(out, cmp);
        csv = out.str();
    } else if (c.command == "table") {
        if (c.sizes.empty()) throw std::invalid_argument("table: --sizes is required");
        std::vector<avgmix::TableRow> rows =
            avgmix::run_table(c.table, c.sizes, c.eps, c.trials, c.seed, c.t_max);
        Json summary = Json::array();
        for (const avgmix::TableRow& r : rows) {
            Json row;
            row["family"] = r.family;
            row["size"] = r.size_param;
            row["gamma"] = r.gamma;
            row["estimate"] = avgmix::to_json(r.estimate);
            summary.push_back(row);
        }
        report["estimate"] = summary;
        std::ostringstream out;
        avgmix::write_table_csv(out, rows);
        csv = out.str();
    } else {
        throw std::invalid_argument("unknown command '" + c.command + "'");
    }

    report["config"] = config_to_json(c);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report["runtime_seconds"] = secs;
    emit(c, std::move(report), csv);
}

std::vector<long long> parse_ll_list(const std::string& s) {
    std::vector<long long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"avgmix: averaging-process simulation, spectral bounds and mixing estimates"};
    app.require_subcommand(1);

    Config cfg;
    std::string pq;
    std::string sizes_arg;
    std::string checkpoints_arg;
    std::string rerun_path;

    auto add_common = [&](CLI::App* sub, bool with_graph) {
        if (with_graph)
            sub->add_option("--graph", cfg.graph, "graph spec, e.g. complete:64 or file:edges.txt")
                ->required();
        sub->add_option("--seed", cfg.seed, "master RNG seed");
        sub->add_option("--trials", cfg.trials, "number of Monte Carlo trials");
        sub->add_option("--out-json", cfg.out_json, "JSON report path (stdout if omitted)");
        sub->add_option("--out-csv", cfg.out_csv, "CSV artifact path");
    };

    CLI::App* sim = app.add_subcommand("simulate", "dump one trajectory as CSV");
    add_common(sim, true);
    sim->add_option("--init", cfg.init, "initialization spec");
    sim->add_option("--steps", cfg.steps, "number of steps");
    sim->add_option("--record-stride", cfg.record_stride, "record every k-th step");

    CLI::App* mix = app.add_subcommand("mix", "estimate the epsilon-mixing time");
    add_common(mix, true);
    mix->add_option("--init", cfg.init, "initialization spec");
    mix->add_option("--eps", cfg.eps, "target epsilon");
    mix->add_option("--pq", pq, "norm pair p,q (e.g. 1,1 or 2,1)");
    mix->add_option("--t-max", cfg.t_max, "simulation horizon (0 = auto)");
    mix->add_option("--stride", cfg.stride, "geometric recording stride factor");

    CLI::App* cover = app.add_subcommand("cover", "estimate the alpha-covering time");
    add_common(cover, true);
    cover->add_option("--corner", cfg.corner, "starting corner index");
    cover->add_option("--alpha", cfg.alpha, "target nonzero fraction");

    CLI::App* bounds = app.add_subcommand("bounds", "closed-form mixing bounds");
    add_common(bounds, true);
    bounds->add_option("--eps", cfg.eps, "target epsilon")->check(CLI::Range(1e-9, 0.999999));

    CLI::App* spectral = app.add_subcommand("spectral", "spectral summary of a graph");
    add_common(spectral, true);

    CLI::App* sweep = app.add_subcommand("corner-sweep", "mean L1 distance from every corner");
    add_common(sweep, true);
    sweep->add_option("--t", cfg.t, "evaluation step")->required();

    CLI::App* cyc = app.add_subcommand("cycle-split", "averaging vs splitting process on a cycle");
    add_common(cyc, false);
    cyc->add_option("--n", cfg.cycle_n, "cycle length");
    cyc->add_option("--checkpoints", checkpoints_arg, "comma-separated step checkpoints");

    CLI::App* slowed = app.add_subcommand("slowed-compare",
                                          "slowed pair process vs the complete graph");
    add_common(slowed, true);
    slowed->add_option("--init", cfg.init, "initialization spec");
    slowed->add_option("--steps", cfg.steps, "comparison horizon");

    CLI::App* table = app.add_subcommand("table", "scaling-table experiments");
    table->add_option("which", cfg.table, "table number (1, 2 or 3)")->required();
    add_common(table, false);
    table->add_option("--sizes", sizes_arg, "comma-separated family sizes")->required();
    table->add_option("--eps", cfg.eps, "target epsilon");
    table->add_option("--t-max", cfg.t_max, "simulation horizon override (0 = auto)");

    CLI::App* rerun = app.add_subcommand("rerun", "re-run from the config embedded in a report");
    rerun->add_option("report", rerun_path, "JSON report path")->required();
    rerun->add_option("--out-json", cfg.out_json, "JSON report path (stdout if omitted)");
    rerun->add_option("--out-csv", cfg.out_csv, "CSV artifact path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 1;
    }

    try {
        if (rerun->parsed()) {
            std::ifstream f(rerun_path);
            if (!f) throw std::runtime_error("cannot open report '" + rerun_path + "'");
            Json j = Json::parse(f);
            Config c = config_from_json(j.at("config"));
            c.out_json = cfg.out_json;
            c.out_csv = cfg.out_csv;
            run_command(c);
            return 0;
        }
        cfg.command = app.get_subcommands().front()->get_name();
        if (!pq.empty()) {
            auto v = parse_ll_list(pq);
            if (v.size() != 2) throw std::invalid_argument("--pq expects two values");
            cfg.p = static_cast<int>(v[0]);
            cfg.q = static_cast<int>(v[1]);
        }
        if (!sizes_arg.empty()) cfg.sizes = parse_ll_list(sizes_arg);
        if (!checkpoints_arg.empty()) cfg.checkpoints = parse_ll_list(checkpoints_arg);
        run_command(cfg);
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n\n" << app.help() << std::flush;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
}
