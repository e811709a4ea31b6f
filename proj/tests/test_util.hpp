#pragma once

// Shared fixtures and brute-force reference checks used across the test
// suites. Everything here is deliberately naive: these are the oracles
// the fast implementations are judged against.

#include <vector>

#include "jts/chordal.hpp"
#include "jts/graph.hpp"
#include "jts/vertex_set.hpp"

namespace jts::testutil {

// Seven-vertex pair differing by the single edge (0,6). Graph A has
// cliques {0,1},{1,2},{1,6},{0,3,4},{4,5}; vertex 1 sits in three cliques
// whose pairwise separators are all {1}, so A has exactly 3 junction
// trees; adding (0,6) merges {0,1} and {1,6} into {0,1,6}.
inline Graph seven_a() {
    Graph g(7);
    g.add_edge(0, 1);
    g.add_edge(1, 6);
    g.add_edge(1, 2);
    g.add_edge(0, 3);
    g.add_edge(0, 4);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    return g;
}

inline Graph seven_b() {
    Graph g = seven_a();
    g.add_edge(0, 6);
    return g;
}

// chordality by exhaustive search for an induced (chordless) cycle of
// length >= 4: a vertex subset whose induced subgraph is exactly a cycle
inline bool chordal_by_cycles(const Graph& g) {
    const int v = g.num_vertices();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << v); ++mask) {
        std::vector<int> verts;
        for (int i = 0; i < v; ++i)
            if (mask >> i & 1) verts.push_back(i);
        const int k = static_cast<int>(verts.size());
        if (k < 4) continue;
        int edges = 0;
        bool all_deg2 = true;
        for (int a = 0; a < k && all_deg2; ++a) {
            int deg = 0;
            for (int b = 0; b < k; ++b)
                if (a != b && g.has_edge(verts[a], verts[b])) ++deg;
            if (deg != 2) all_deg2 = false;
            edges += deg;
        }
        if (!all_deg2 || edges != 2 * k) continue;
        // connected 2-regular graph on k vertices = a k-cycle, chordless
        std::vector<char> seen(k, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 0;
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            ++count;
            for (int b = 0; b < k; ++b) {
                if (!seen[b] && g.has_edge(verts[a], verts[b])) {
                    seen[b] = 1;
                    stack.push_back(b);
                }
            }
        }
        if (count == k) return false;
    }
    return true;
}

// maximal cliques by subset enumeration
inline std::vector<VertexSet> max_cliques_brute(const Graph& g) {
    const int v = g.num_vertices();
    std::vector<std::uint64_t> complete;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << v); ++mask) {
        std::vector<int> verts;
        for (int i = 0; i < v; ++i)
            if (mask >> i & 1) verts.push_back(i);
        bool ok = true;
        for (std::size_t a = 0; a < verts.size() && ok; ++a)
            for (std::size_t b = a + 1; b < verts.size() && ok; ++b)
                if (!g.has_edge(verts[a], verts[b])) ok = false;
        if (ok) complete.push_back(mask);
    }
    std::vector<VertexSet> out;
    for (auto m : complete) {
        bool maximal = true;
        for (auto o : complete)
            if (o != m && (m & o) == m) maximal = false;
        if (!maximal) continue;
        std::vector<int> verts;
        for (int i = 0; i < v; ++i)
            if (m >> i & 1) verts.push_back(i);
        out.emplace_back(std::move(verts));
    }
    return out;
}

}  // namespace jts::testutil
