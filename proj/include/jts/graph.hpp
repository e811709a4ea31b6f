#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "jts/bitset.hpp"
#include "jts/vertex_set.hpp"

namespace jts {

// Labelled undirected graph on vertices 0..v-1. Adjacency is stored as a
// bitset row per vertex, giving O(1) edge tests and word-parallel
// neighbourhood operations. No self-loops, no multi-edges.
class Graph {
public:
    Graph() = default;
    explicit Graph(int v);

    // builds a graph on v vertices from an edge bitmask over the pairs
    // (0,1),(0,2),(1,2),(0,3),... in column-major order; used by the
    // exhaustive enumerators.
    static Graph from_edge_mask(int v, std::uint64_t mask);
    std::uint64_t edge_mask() const;

    int num_vertices() const { return v_; }
    long num_edges() const { return edges_; }

    bool has_edge(int i, int j) const { return adj_[i].test(j); }
    void add_edge(int i, int j);
    void remove_edge(int i, int j);
    void toggle_edge(int i, int j);

    const Bitset& neighbors(int i) const { return adj_[i]; }
    int degree(int i) const { return adj_[i].count(); }

    std::vector<std::pair<int, int>> edge_list() const;

    bool operator==(const Graph& o) const = default;

private:
    int v_ = 0;
    long edges_ = 0;
    std::vector<Bitset> adj_;

    void check_vertex(int i) const;
};

// Subgraph induced by u, with vertices relabelled to 0..|u|-1 in the sorted
// order of u. Throws std::out_of_range on labels outside the graph.
Graph induced_subgraph(const Graph& g, const VertexSet& u);

// Edge-list text format: first line "v <count>", then one "i j" pair per
// line; blank lines and "#" comments ignored.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g,
                          const std::vector<std::string>& comments = {});

}  // namespace jts
