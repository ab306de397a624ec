#include "avgmix/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace avgmix {

std::string fmt_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

Json to_json(const SpectralSummary& s) {
    Json j;
    j["n"] = s.n;
    j["edges"] = s.edges;
    j["lambda2"] = s.lambda2;
    j["gamma"] = s.gamma;
    j["delta"] = s.delta;
    double beta_max = 0.0;
    for (double b : s.beta) beta_max = std::max(beta_max, b);
    j["beta_max"] = beta_max;
    j["beta_residual"] = s.beta_residual;
    return j;
}

Json to_json(const BoundReport& r) {
    Json j;
    j["eps"] = r.eps;
    j["universal_lower"] = r.universal_lower;
    j["universal_lower_asymptotic"] = true; // leading term only, O(n) correction omitted
    j["l2_lower"] = r.l2_lower;
    j["l2_upper"] = r.l2_upper;
    j["l1_lower"] = r.l1_lower;
    j["l1_upper"] = r.l1_upper;
    j["l21_lower"] = r.l21_lower;
    j["l21_upper"] = r.l21_upper;
    j["l21_lower_deloc"] = r.l21_lower_deloc;
    j["cov_lower"] = r.cov_lower;
    return j;
}

Json to_json(const MixingEstimate& e) {
    Json j;
    j["epsilon"] = e.epsilon;
    j["p"] = e.p;
    j["q"] = e.q;
    j["converged"] = e.converged;
    if (e.converged) {
        j["t_hat"] = e.t_hat;
        j["t_interp"] = e.t_interp;
    } else {
        j["t_hat"] = nullptr;
        j["t_interp"] = nullptr;
    }
    j["trials"] = e.trials;
    j["t_max"] = e.t_max;
    j["seed"] = e.seed;
    j["grid_points"] = e.curve.size();
    return j;
}

Json to_json(const CoveringEstimate& e) {
    Json j;
    j["alpha"] = e.alpha;
    j["corner"] = e.corner;
    j["mean"] = e.mean;
    j["stderr"] = e.stderr_;
    j["trials"] = e.trials;
    j["seed"] = e.seed;
    return j;
}

Json to_json(const CornerSweep& s) {
    Json j;
    j["t"] = s.t;
    j["trials"] = s.trials;
    j["argmax_corner"] = s.argmax;
    j["mean"] = s.mean;
    j["stderr"] = s.stderr_;
    return j;
}

Json to_json(const SlowedCompare& c) {
    Json j;
    j["horizon"] = c.horizon;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    double worst = -1e300;
    for (long long t = 0; t < c.horizon; ++t)
        worst = std::max(worst, c.mean_complete[t] - c.mean_graph[t] - 2.0 * c.se_diff[t]);
    j["max_excess_over_complete"] = worst; // <= 0 when K_n dominates at 2 SE
    return j;
}

Json to_json(const SplitCompare& c) {
    Json j;
    j["n"] = c.n;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["checkpoints"] = c.checkpoints;
    j["mean_T"] = c.mean_T;
    j["se_T"] = c.se_T;
    j["mean_T_split"] = c.mean_Tsplit;
    j["se_T_split"] = c.se_Tsplit;
    j["q_initial"] = c.q_initial;
    j["q_monotone"] = c.q_monotone;
    j["max_mass_error"] = c.max_mass_error;
    return j;
}

void write_curve_csv(std::ostream& out, const MixingEstimate& e) {
    out << "t,mean,stderr,trials\n";
    for (const CurvePoint& pt : e.curve)
        out << pt.t << ',' << fmt_double(pt.mean) << ',' << fmt_double(pt.stderr_) << ','
            << pt.trials << '\n';
}

void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows) {
    out << "family,size,nodes,edges,gamma,delta,init,eps,p,q,trials,converged,t_hat,t_interp,"
           "l2_lower,l2_upper,l1_lower,l1_upper,l21_lower,l21_upper,l21_lower_deloc\n";
    for (const TableRow& r : rows) {
        out << r.family << ',' << r.size_param << ',' << r.nodes << ',' << r.edges << ','
            << fmt_double(r.gamma) << ',' << fmt_double(r.delta) << ',' << r.init << ','
            << fmt_double(r.estimate.epsilon) << ',' << r.estimate.p << ',' << r.estimate.q << ','
            << r.estimate.trials << ',' << (r.estimate.converged ? 1 : 0) << ',';
        if (r.estimate.converged)
            out << r.estimate.t_hat << ',' << fmt_double(r.estimate.t_interp);
        else
            out << "nan,nan";
        out << ',' << fmt_double(r.bounds.l2_lower) << ',' << fmt_double(r.bounds.l2_upper) << ','
            << fmt_double(r.bounds.l1_lower) << ',' << fmt_double(r.bounds.l1_upper) << ','
            << fmt_double(r.bounds.l21_lower) << ',' << fmt_double(r.bounds.l21_upper) << ','
            << fmt_double(r.bounds.l21_lower_deloc) << '\n';
    }
}

void write_corner_sweep_csv(std::ostream& out, const CornerSweep& s) {
    out << "corner,mean,stderr,trials\n";
    for (size_t c = 0; c < s.mean.size(); ++c)
        out << c << ',' << fmt_double(s.mean[c]) << ',' << fmt_double(s.stderr_[c]) << ','
            << s.trials << '\n';
}

void write_slowed_compare_csv(std::ostream& out, const SlowedCompare& c) {
    out << "t,mean_complete,mean_graph,se_diff,trials\n";
    for (long long t = 0; t < c.horizon; ++t)
        out << (t + 1) << ',' << fmt_double(c.mean_complete[t]) << ','
            << fmt_double(c.mean_graph[t]) << ',' << fmt_double(c.se_diff[t]) << ',' << c.trials
            << '\n';
}

void write_split_compare_csv(std::ostream& out, const SplitCompare& c) {
    out << "t,mean_T,se_T,mean_T_split,se_T_split,trials\n";
    for (size_t i = 0; i < c.checkpoints.size(); ++i)
        out << c.checkpoints[i] << ',' << fmt_double(c.mean_T[i]) << ',' << fmt_double(c.se_T[i])
            << ',' << fmt_double(c.mean_Tsplit[i]) << ',' << fmt_double(c.se_Tsplit[i]) << ','
            << c.trials << '\n';
}

} // namespace avgmix
