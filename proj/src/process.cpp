#include "avgmix/process.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "avgmix/spectral.hpp"
#include "avgmix/stats.hpp"

namespace avgmix {

InitSpec InitSpec::parse(const std::string& text) {
    InitSpec s;
    if (text == "fiedler") {
        s.kind = Kind::fiedler;
    } else if (text == "fiedler-l1") {
        s.kind = Kind::fiedler_l1;
    } else if (text == "signed-split") {
        s.kind = Kind::signed_split;
    } else if (text.rfind("corner:", 0) == 0) {
        s.kind = Kind::corner;
        s.index = std::stoi(text.substr(7));
    } else if (text.rfind("vector:", 0) == 0) {
        s.kind = Kind::vector_file;
        s.path = text.substr(7);
        if (s.path.empty()) throw std::invalid_argument("vector: requires a path");
    } else {
        throw std::invalid_argument("unknown init spec '" + text + "'");
    }
    return s;
}

std::string InitSpec::to_string() const {
    switch (kind) {
        case Kind::corner: return "corner:" + std::to_string(index);
        case Kind::vector_file: return "vector:" + path;
        case Kind::fiedler: return "fiedler";
        case Kind::fiedler_l1: return "fiedler-l1";
        case Kind::signed_split: return "signed-split";
    }
    return "?";
}

StateVector make_state(std::vector<double> values) {
    StateVector s;
    KahanSum total;
    for (double x : values) {
        if (!std::isfinite(x)) throw std::invalid_argument("state value is not finite");
        total.add(x);
    }
    s.mean = total.value() / static_cast<double>(values.size());
    s.values = std::move(values);
    return s;
}

namespace {

std::vector<double> signed_split_vector(const Graph& g) {
    const int n = g.n;
    std::vector<double> v(n, 0.0);
    if (g.family == Family::btree) {
        // Root stays 0; left subtree +a, right subtree -a.
        double a = 1.0 / std::sqrt(static_cast<double>(n - 1));
        for (int i = 1; i < n; ++i) {
            int w = i;
            while (w > 2) w = (w - 1) / 2;
            v[i] = (w == 1) ? a : -a;
        }
        return v;
    }
    int first, count;
    if (g.family == Family::star) {
        first = 1; // center exempt
        count = n - 1;
    } else {
        first = 0;
        count = n;
    }
    int half = count / 2;
    if (half == 0) throw std::invalid_argument("signed-split: graph too small");
    double a = 1.0 / std::sqrt(2.0 * half);
    for (int k = 0; k < half; ++k) v[first + k] = a;
    for (int k = 0; k < half; ++k) v[first + half + k] = -a;
    return v;
}

} // namespace

StateVector init_state(const Graph& g, const InitSpec& spec) {
    switch (spec.kind) {
        case InitSpec::Kind::corner: {
            if (spec.index < 0 || spec.index >= g.n)
                throw std::invalid_argument("corner index out of range");
            std::vector<double> v(g.n, 0.0);
            v[spec.index] = 1.0;
            return make_state(std::move(v));
        }
        case InitSpec::Kind::vector_file: {
            std::ifstream f(spec.path);
            if (!f) throw std::runtime_error("cannot open vector file '" + spec.path + "'");
            std::vector<double> v;
            double x;
            while (f >> x) v.push_back(x);
            if (static_cast<int>(v.size()) != g.n)
                throw std::invalid_argument("vector file has " + std::to_string(v.size()) +
                                            " entries, graph has " + std::to_string(g.n));
            return make_state(std::move(v));
        }
        case InitSpec::Kind::fiedler:
            return make_state(fiedler_vector(g));
        case InitSpec::Kind::fiedler_l1: {
            std::vector<double> u = fiedler_vector(g);
            KahanSum l1;
            for (double x : u) l1.add(std::abs(x));
            for (double& x : u) x /= l1.value();
            return make_state(std::move(u));
        }
        case InitSpec::Kind::signed_split:
            return make_state(signed_split_vector(g));
    }
    throw std::logic_error("init_state: unreachable");
}

} // namespace avgmix
