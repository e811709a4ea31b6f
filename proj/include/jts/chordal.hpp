#pragma once

#include <optional>
#include <vector>

#include "jts/graph.hpp"
#include "jts/vertex_set.hpp"

namespace jts {

// Cliques C_1..C_c in an order with the running intersection property:
// each separator S_i = C_i ∩ (C_1 ∪ … ∪ C_{i-1}) is contained in the
// earlier clique parents[i]. separators[0] is empty and parents[0] = -1.
// Separators form a multiset; repeats are meaningful.
struct CliqueDecomposition {
    std::vector<VertexSet> cliques;
    std::vector<VertexSet> separators;
    std::vector<int> parents;

    int size() const { return static_cast<int>(cliques.size()); }
};

struct McsResult {
    std::vector<int> order;  // visit order, first visited at front
    bool decomposable = false;
    std::optional<CliqueDecomposition> decomposition;
};

// Maximum cardinality search: visits vertices by descending count of
// already-visited neighbours (ties broken by smallest label), tests
// chordality via the zero fill-in condition, and when the graph is
// chordal extracts its cliques and separators in a running-intersection
// order. O(|V| + |E|) up to set-operation costs.
McsResult maximum_cardinality_search(const Graph& g);

bool is_decomposable(const Graph& g);

}  // namespace jts
