#include "avgmix/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace avgmix {

const char* family_name(Family f) {
    switch (f) {
        case Family::complete: return "complete";
        case Family::path: return "path";
        case Family::cycle: return "cycle";
        case Family::star: return "star";
        case Family::dumbbell: return "dumbbell";
        case Family::btree: return "btree";
        case Family::bipartite: return "bipartite";
        case Family::regular: return "regular";
        case Family::custom: return "file";
    }
    return "?";
}

namespace {

bool is_pow2_minus_1(long long n) {
    long long m = n + 1;
    return m > 1 && (m & (m - 1)) == 0;
}

std::vector<long long> parse_int_list(const std::string& s) {
    std::vector<long long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw std::invalid_argument("empty parameter in graph spec");
        size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("bad integer '" + tok + "' in graph spec");
        out.push_back(v);
    }
    return out;
}

void check_connected(const Graph& g, const char* what) {
    if (g.n <= 0) throw std::invalid_argument("empty graph");
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : g.adjacency[u]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    if (reached != g.n) throw std::invalid_argument(std::string(what) + ": graph is not connected");
}

// Builds adjacency/degrees from the edge list and validates invariants.
void finalize(Graph& g, const char* what) {
    g.adjacency.assign(g.n, {});
    g.degrees.assign(g.n, 0);
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : g.edges) {
        if (e.u < 0 || e.v < 0 || e.u >= g.n || e.v >= g.n)
            throw std::invalid_argument(std::string(what) + ": edge endpoint out of range");
        if (e.u == e.v) throw std::invalid_argument(std::string(what) + ": self-loop");
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second)
            throw std::invalid_argument(std::string(what) + ": duplicate edge");
        g.adjacency[e.u].push_back(e.v);
        g.adjacency[e.v].push_back(e.u);
        ++g.degrees[e.u];
        ++g.degrees[e.v];
    }
    for (auto& nb : g.adjacency) std::sort(nb.begin(), nb.end());
    check_connected(g, what);
}

void sort_edges_canonical(Graph& g) {
    for (Edge& e : g.edges)
        if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(g.edges.begin(), g.edges.end(),
              [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
}

Graph make_regular(long long n, int d, std::uint64_t seed) {
    if (n < 2 || d < 1 || d >= n) throw std::invalid_argument("regular: need 2 <= d+1 <= n");
    if ((n * d) % 2 != 0) throw std::invalid_argument("regular: n*d must be even");
    const int retry_budget = 1000;
    RngStream rng(seed, 0);
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        // Configuration model: pair up degree stubs, reject bad samples.
        std::vector<int> stubs;
        stubs.reserve(static_cast<size_t>(n) * d);
        for (int v = 0; v < n; ++v)
            for (int k = 0; k < d; ++k) stubs.push_back(v);
        for (size_t i = stubs.size(); i > 1; --i)
            std::swap(stubs[i - 1], stubs[rng.uniform_below(i)]);
        bool ok = true;
        std::set<std::pair<int, int>> seen;
        Graph g;
        g.n = static_cast<int>(n);
        for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v || !seen.insert(std::minmax(u, v)).second) {
                ok = false;
                break;
            }
            g.edges.push_back({u, v});
        }
        if (!ok) continue;
        sort_edges_canonical(g);
        try {
            finalize(g, "regular");
        } catch (const std::invalid_argument&) {
            continue; // disconnected sample, draw again
        }
        g.family = Family::regular;
        return g;
    }
    throw std::runtime_error("regular: generation failed after retry budget");
}

} // namespace

bool Graph::has_edge(int i, int j) const {
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) return false;
    const auto& nb = adjacency[i];
    return std::binary_search(nb.begin(), nb.end(), j);
}

GraphSpec GraphSpec::parse(const std::string& text) {
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    GraphSpec s;
    if (head == "file") {
        s.family = Family::custom;
        if (rest.empty()) throw std::invalid_argument("file: requires a path");
        s.path = rest;
        return s;
    }
    auto params = parse_int_list(rest);
    auto need = [&](size_t k) {
        if (params.size() != k)
            throw std::invalid_argument(head + ": expected " + std::to_string(k) + " parameter(s)");
    };
    if (head == "complete") { s.family = Family::complete; need(1); s.n = params[0]; }
    else if (head == "path") { s.family = Family::path; need(1); s.n = params[0]; }
    else if (head == "cycle") { s.family = Family::cycle; need(1); s.n = params[0]; }
    else if (head == "star") { s.family = Family::star; need(1); s.n = params[0]; }
    else if (head == "dumbbell") { s.family = Family::dumbbell; need(1); s.n = params[0]; }
    else if (head == "btree") { s.family = Family::btree; need(1); s.n = params[0]; }
    else if (head == "bipartite") { s.family = Family::bipartite; need(2); s.n = params[0]; s.b = params[1]; }
    else if (head == "regular") {
        s.family = Family::regular;
        need(3);
        s.n = params[0];
        s.degree = static_cast<int>(params[1]);
        s.seed = static_cast<std::uint64_t>(params[2]);
    } else {
        throw std::invalid_argument("unknown graph family '" + head + "'");
    }
    return s;
}

std::string GraphSpec::to_string() const {
    switch (family) {
        case Family::bipartite:
            return "bipartite:" + std::to_string(n) + "," + std::to_string(b);
        case Family::regular:
            return "regular:" + std::to_string(n) + "," + std::to_string(degree) + "," +
                   std::to_string(seed);
        case Family::custom:
            return "file:" + path;
        default:
            return std::string(family_name(family)) + ":" + std::to_string(n);
    }
}

namespace {

// Everything downstream is dense and desk-scale; refuse sizes that could
// not possibly be useful rather than thrashing memory.
void check_budget(long long nodes, long long edge_count) {
    if (nodes > 50'000'000 || edge_count > 50'000'000)
        throw std::invalid_argument("graph exceeds the 5e7 node/edge budget");
}

} // namespace

Graph make_graph(const GraphSpec& spec) {
    Graph g;
    g.family = spec.family;
    g.spec = spec.to_string();
    const long long n = spec.n;
    switch (spec.family) {
        case Family::complete: check_budget(n, n * (n - 1) / 2); break;
        case Family::dumbbell: check_budget(2 * n, n * (n - 1) + 1); break;
        case Family::bipartite: check_budget(spec.n + spec.b, spec.n * spec.b); break;
        case Family::regular: check_budget(n, n * spec.degree / 2); break;
        case Family::custom: break;
        default: check_budget(n, n); break;
    }
    switch (spec.family) {
        case Family::complete: {
            if (n < 2) throw std::invalid_argument("complete: n >= 2 required");
            g.n = static_cast<int>(n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) g.edges.push_back({i, j});
            break;
        }
        case Family::path: {
            if (n < 2) throw std::invalid_argument("path: n >= 2 required");
            g.n = static_cast<int>(n);
            for (int i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1});
            break;
        }
        case Family::cycle: {
            if (n < 3) throw std::invalid_argument("cycle: n >= 3 required");
            g.n = static_cast<int>(n);
            for (int i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1});
            g.edges.push_back({0, static_cast<int>(n) - 1});
            break;
        }
        case Family::star: {
            // Center is node 0, leaves 1..n-1.
            if (n < 2) throw std::invalid_argument("star: n >= 2 required");
            g.n = static_cast<int>(n);
            for (int i = 1; i < n; ++i) g.edges.push_back({0, i});
            break;
        }
        case Family::dumbbell: {
            // Two n-cliques {0..n-1}, {n..2n-1} joined by the bridge (n-1, 2n-1).
            if (n < 2) throw std::invalid_argument("dumbbell: n >= 2 required");
            g.n = static_cast<int>(2 * n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    g.edges.push_back({i, j});
                    g.edges.push_back({static_cast<int>(n) + i, static_cast<int>(n) + j});
                }
            g.edges.push_back({static_cast<int>(n) - 1, static_cast<int>(2 * n) - 1});
            break;
        }
        case Family::btree: {
            // Heap labeling: root 0, node i has children 2i+1, 2i+2.
            if (n < 3 || !is_pow2_minus_1(n))
                throw std::invalid_argument("btree: n must be 2^k - 1, k >= 2");
            g.n = static_cast<int>(n);
            for (int i = 0; 2 * i + 2 < n; ++i) {
                g.edges.push_back({i, 2 * i + 1});
                g.edges.push_back({i, 2 * i + 2});
            }
            break;
        }
        case Family::bipartite: {
            if (spec.n < 1 || spec.b < 1 || spec.n + spec.b < 2)
                throw std::invalid_argument("bipartite: a, b >= 1 required");
            g.n = static_cast<int>(spec.n + spec.b);
            for (int i = 0; i < spec.n; ++i)
                for (int j = 0; j < spec.b; ++j)
                    g.edges.push_back({i, static_cast<int>(spec.n) + j});
            break;
        }
        case Family::regular: {
            Graph rg = make_regular(spec.n, spec.degree, spec.seed);
            rg.spec = spec.to_string();
            return rg;
        }
        case Family::custom:
            return load_edge_list_file(spec.path);
    }
    sort_edges_canonical(g);
    finalize(g, family_name(spec.family));
    return g;
}

Graph make_graph(const std::string& spec_text) { return make_graph(GraphSpec::parse(spec_text)); }

Graph load_edge_list(const std::string& text) {
    Graph g;
    g.family = Family::custom;
    g.spec = "file:-";
    std::istringstream in(text);
    std::string line;
    int max_node = -1;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long i, j;
        if (!(ls >> i)) continue; // blank / comment-only line
        std::string trailing;
        if (!(ls >> j) || (ls >> trailing)) {
            throw std::invalid_argument("edge list line " + std::to_string(lineno) +
                                        ": expected 'i j'");
        }
        if (i < 0 || j < 0)
            throw std::invalid_argument("edge list line " + std::to_string(lineno) +
                                        ": negative node index");
        if (i == j)
            throw std::invalid_argument("edge list line " + std::to_string(lineno) + ": self-loop");
        g.edges.push_back({static_cast<int>(i), static_cast<int>(j)});
        max_node = std::max(max_node, static_cast<int>(std::max(i, j)));
    }
    if (max_node < 1) throw std::invalid_argument("edge list: no edges");
    g.n = max_node + 1;
    finalize(g, "edge list");
    return g;
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open edge list file '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    Graph g = load_edge_list(buf.str());
    g.spec = "file:" + path;
    return g;
}

std::string render_edge_list(const Graph& g) {
    std::string out;
    for (const Edge& e : g.edges) {
        out += std::to_string(e.u);
        out += ' ';
        out += std::to_string(e.v);
        out += '\n';
    }
    return out;
}

} // namespace avgmix
