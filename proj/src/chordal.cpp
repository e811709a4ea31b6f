#include "jts/chordal.hpp"

#include <set>

namespace jts {

namespace {

// Shared MCS sweep. When build_decomposition is false the loop stops at
// the first chordality violation.
McsResult mcs_impl(const Graph& g, bool build_decomposition) {
    const int v = g.num_vertices();
    McsResult res;
    res.order.reserve(v);
    res.decomposable = true;

    Bitset visited(v);
    std::vector<int> weight(v, 0);
    std::vector<int> pos(v, -1);

    // bucket per weight; smallest label first within a bucket
    std::vector<std::set<int>> bucket(v + 1);
    for (int i = 0; i < v; ++i) bucket[0].insert(i);
    int cur_max = 0;

    CliqueDecomposition dec;
    std::vector<int> clique_of(v, -1);  // clique a vertex was absorbed into
    VertexSet active;                   // clique currently being grown
    VertexSet active_sep;
    int active_parent = -1;
    int prev_lambda = -1;

    auto close_active = [&]() {
        if (active.empty()) return;
        dec.cliques.push_back(active);
        dec.separators.push_back(active_sep);
        dec.parents.push_back(active_parent);
        active = VertexSet();
    };

    for (int step = 0; step < v; ++step) {
        while (cur_max > 0 && bucket[cur_max].empty()) --cur_max;
        const int u = *bucket[cur_max].begin();
        bucket[cur_max].erase(bucket[cur_max].begin());

        Bitset pred = g.neighbors(u) & visited;
        const int lambda = pred.count();

        if (lambda > 0) {
            // p: the member of pred visited last
            int p = -1, best_pos = -1;
            pred.for_each([&](int w) {
                if (pos[w] > best_pos) {
                    best_pos = pos[w];
                    p = w;
                }
            });
            Bitset rest = pred;
            rest.reset(p);
            if (!rest.is_subset_of(g.neighbors(p))) {
                res.decomposable = false;
                if (!build_decomposition) return res;
            }
            if (build_decomposition && res.decomposable) {
                if (lambda <= prev_lambda) {
                    close_active();
                    active = VertexSet(pred.to_vector());
                    active_sep = active;
                    active_parent = clique_of[p];
                    active.insert(u);
                } else {
                    // monotone growth: pred equals the active clique
                    active.insert(u);
                }
                clique_of[u] = static_cast<int>(dec.cliques.size());
            }
        } else if (build_decomposition && res.decomposable) {
            // new component (or first vertex): fresh clique, empty separator
            close_active();
            active = VertexSet::singleton(u);
            active_sep = VertexSet();
            active_parent = step == 0 ? -1 : 0;
            clique_of[u] = static_cast<int>(dec.cliques.size());
        }

        visited.set(u);
        pos[u] = step;
        res.order.push_back(u);
        g.neighbors(u).for_each([&](int w) {
            if (!visited.test(w)) {
                bucket[weight[w]].erase(w);
                ++weight[w];
                bucket[weight[w]].insert(w);
                if (weight[w] > cur_max) cur_max = weight[w];
            }
        });
        prev_lambda = lambda;
    }

    if (build_decomposition && res.decomposable) {
        close_active();
        res.decomposition = std::move(dec);
    }
    return res;
}

}  // namespace

McsResult maximum_cardinality_search(const Graph& g) { return mcs_impl(g, true); }

bool is_decomposable(const Graph& g) { return mcs_impl(g, false).decomposable; }

}  // namespace jts
