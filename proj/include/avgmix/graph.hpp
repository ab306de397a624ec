#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "avgmix/rng.hpp"

namespace avgmix {

struct Edge {
    int u = 0;
    int v = 0;
};

inline bool operator==(const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }

enum class Family { complete, path, cycle, star, dumbbell, btree, bipartite, regular, custom };

const char* family_name(Family f);

// Parsed graph description. Grammar:
//   complete:n | path:n | cycle:n | star:n | dumbbell:n | btree:n
//   | bipartite:a,b | regular:n,d,seed | file:path
struct GraphSpec {
    Family family = Family::custom;
    long long n = 0;       // node-count parameter (dumbbell:n builds 2n nodes)
    long long b = 0;       // second part size for bipartite
    int degree = 0;        // regular
    std::uint64_t seed = 0; // regular
    std::string path;      // file

    static GraphSpec parse(const std::string& text);
    std::string to_string() const;
};

// Undirected simple connected graph. Nodes are 0..n-1, the edge list is
// canonical (lexicographic by (min,max) endpoint for generated families,
// file order for ingested graphs). Immutable after construction; all
// processes hold const references.
struct Graph {
    int n = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> adjacency; // sorted neighbor lists
    std::vector<int> degrees;
    Family family = Family::custom;
    std::string spec; // spec string this graph was built from

    long long edge_count() const { return static_cast<long long>(edges.size()); }
    bool has_edge(int i, int j) const;
    double average_degree() const { return 2.0 * static_cast<double>(edges.size()) / n; }
};

Graph make_graph(const GraphSpec& spec);
Graph make_graph(const std::string& spec_text);

// Parses "i j" lines (0-based, '#' comments and blank lines ignored).
// Rejects self-loops, duplicate edges and disconnected graphs.
Graph load_edge_list(const std::string& text);
Graph load_edge_list_file(const std::string& path);
std::string render_edge_list(const Graph& g);

// Uniform draw from the edge list.
inline Edge sample_edge(const Graph& g, RngStream& rng) {
    return g.edges[rng.uniform_below(g.edges.size())];
}

} // namespace avgmix
