#include "jts/tree_count.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

namespace jts {

namespace {

struct Dsu {
    std::vector<int> parent;
    std::vector<int> cliques;  // original cliques per super-node

    explicit Dsu(int n) : parent(n), cliques(n, 0) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (cliques[a] < cliques[b]) std::swap(a, b);
        parent[b] = a;
        cliques[a] += cliques[b];
    }
};

// link weights of the junction graph, grouped by |C_i ∩ C_j| descending;
// only sharing pairs appear, every remaining pair has weight 0
std::map<int, std::vector<std::pair<int, int>>, std::greater<int>> weight_classes(
    const JunctionTree& j) {
    std::unordered_map<std::uint64_t, int> w;
    for (int z = 0; z < j.num_vertices(); ++z) {
        const auto& holders = j.nodes_containing(z);
        for (std::size_t a = 0; a < holders.size(); ++a) {
            for (std::size_t b = a + 1; b < holders.size(); ++b) {
                ++w[(std::uint64_t(holders[a]) << 32) | std::uint64_t(holders[b])];
            }
        }
    }
    std::map<int, std::vector<std::pair<int, int>>, std::greater<int>> classes;
    for (const auto& [key, wt] : w)
        classes[wt].emplace_back(int(key >> 32), int(key & 0xffffffffu));
    for (auto& [wt, pairs] : classes) std::sort(pairs.begin(), pairs.end());
    return classes;
}

// multigraph of one weight class over current super-nodes
struct ClassGraph {
    std::vector<int> roots;                     // local -> super-node id
    std::unordered_map<int, int> local;         // super-node id -> local
    // local pair (a<b) -> original junction-graph links realizing it
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> multi;
    std::vector<std::vector<std::pair<int, long>>> adj;  // (nbr, multiplicity)

    int local_of(int root) {
        auto it = local.find(root);
        if (it != local.end()) return it->second;
        int id = static_cast<int>(roots.size());
        local.emplace(root, id);
        roots.push_back(root);
        return id;
    }

    void finish() {
        adj.assign(roots.size(), {});
        for (const auto& [pr, originals] : multi) {
            long m = static_cast<long>(originals.size());
            adj[pr.first].emplace_back(pr.second, m);
            adj[pr.second].emplace_back(pr.first, m);
        }
    }
};

ClassGraph build_class_graph(const std::vector<std::pair<int, int>>& pairs, Dsu& dsu) {
    ClassGraph cg;
    for (auto [a, b] : pairs) {
        int ra = dsu.find(a), rb = dsu.find(b);
        if (ra == rb) continue;
        int la = cg.local_of(ra), lb = cg.local_of(rb);
        if (lb < la) std::swap(la, lb);
        cg.multi[{la, lb}].emplace_back(a, b);
    }
    cg.finish();
    return cg;
}

std::vector<std::vector<int>> components(const ClassGraph& cg) {
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(cg.roots.size(), 0);
    for (std::size_t s = 0; s < cg.roots.size(); ++s) {
        if (seen[s]) continue;
        std::vector<int> comp, stack{static_cast<int>(s)};
        seen[s] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (auto [nb, m] : cg.adj[u]) {
                if (!seen[nb]) {
                    seen[nb] = 1;
                    stack.push_back(nb);
                }
            }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

// determinant by fraction-free elimination; pivots of a reduced Laplacian
// of a connected multigraph are always positive
BigInt bareiss_det(std::vector<std::vector<BigInt>> m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    BigInt prev = 1;
    for (int p = 0; p + 1 < n; ++p) {
        assert(m[p][p] != 0);
        for (int i = p + 1; i < n; ++i) {
            for (int k = p + 1; k < n; ++k) {
                m[i][k] = (m[p][p] * m[i][k] - m[i][p] * m[p][k]) / prev;
            }
            m[i][p] = 0;
        }
        prev = m[p][p];
    }
    return m[n - 1][n - 1];
}

// spanning trees of one connected component, by the matrix-tree theorem
BigInt component_tree_count(const ClassGraph& cg, const std::vector<int>& comp) {
    const int k = static_cast<int>(comp.size());
    if (k == 1) return 1;

    long medges = 0;
    std::vector<int> pos(cg.roots.size(), -1);
    for (int i = 0; i < k; ++i) pos[comp[i]] = i;
    for (int u : comp)
        for (auto [nb, m] : cg.adj[u])
            if (nb > u) medges += m;
    if (medges == k - 1) return 1;  // the component is itself a tree

    std::vector<std::vector<BigInt>> lap(k - 1, std::vector<BigInt>(k - 1, 0));
    for (int i = 0; i < k; ++i) {
        for (auto [nb, m] : cg.adj[comp[i]]) {
            int jj = pos[nb];
            if (i < k - 1) lap[i][i] += m;
            if (i < k - 1 && jj < k - 1) lap[i][jj] -= m;
        }
    }
    return bareiss_det(std::move(lap));
}

// Wilson's loop-erased random walk: uniform spanning tree of a weighted
// multigraph given as adjacency lists (weight = parallel edge count)
std::vector<std::pair<int, int>> wilson_ust(
    const std::vector<std::vector<std::pair<int, long>>>& adj, Rng& rng) {
    const int k = static_cast<int>(adj.size());
    std::vector<long> total(k, 0);
    for (int u = 0; u < k; ++u)
        for (auto [nb, m] : adj[u]) total[u] += m;

    std::vector<int> next(k, -1);
    std::vector<char> intree(k, 0);
    intree[0] = 1;
    for (int s = 0; s < k; ++s) {
        int u = s;
        while (!intree[u]) {
            long r = rng.uniform_i64(0, total[u] - 1);
            for (auto [nb, m] : adj[u]) {
                r -= m;
                if (r < 0) {
                    next[u] = nb;
                    break;
                }
            }
            u = next[u];
        }
        u = s;
        while (!intree[u]) {
            intree[u] = 1;
            u = next[u];
        }
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(k - 1);
    for (int u = 1; u < k; ++u) edges.emplace_back(u, next[u]);
    return edges;
}

}  // namespace

BigInt count_junction_trees(const JunctionTree& j) {
    const int c = j.num_nodes();
    if (c <= 1) return 1;

    int max_id = 0;
    for (int n : j.active_nodes()) max_id = std::max(max_id, n);
    Dsu dsu(max_id + 1);
    for (int n : j.active_nodes()) dsu.cliques[n] = 1;

    BigInt mu = 1;
    for (const auto& [wt, pairs] : weight_classes(j)) {
        ClassGraph cg = build_class_graph(pairs, dsu);
        if (cg.roots.empty()) continue;
        for (const auto& comp : components(cg)) {
            mu *= component_tree_count(cg, comp);
            for (std::size_t i = 1; i < comp.size(); ++i)
                dsu.unite(cg.roots[comp[0]], cg.roots[comp[i]]);
        }
    }

    // weight-0 class: the complete multigraph over remaining super-nodes,
    // with |A|·|B| parallel links between A and B; its spanning-tree count
    // has the closed form c^{k-2} · Π|A|
    std::vector<int> roots;
    for (int n : j.active_nodes())
        if (dsu.find(n) == n) roots.push_back(n);
    const int k = static_cast<int>(roots.size());
    if (k >= 2) {
        BigInt zero_class = boost::multiprecision::pow(BigInt(c), unsigned(k - 2));
        for (int r : roots) zero_class *= dsu.cliques[r];
        mu *= zero_class;
    }
    return mu;
}

double log_count_junction_trees(const JunctionTree& j) {
    return log_big(count_junction_trees(j));
}

void rerandomize_links(JunctionTree& j, Rng& rng) {
    const int c = j.num_nodes();
    if (c <= 1) return;

    int max_id = 0;
    for (int n : j.active_nodes()) max_id = std::max(max_id, n);
    Dsu dsu(max_id + 1);
    for (int n : j.active_nodes()) dsu.cliques[n] = 1;

    std::vector<std::pair<int, int>> chosen;
    chosen.reserve(c - 1);

    for (const auto& [wt, pairs] : weight_classes(j)) {
        ClassGraph cg = build_class_graph(pairs, dsu);
        if (cg.roots.empty()) continue;
        for (const auto& comp : components(cg)) {
            if (comp.size() == 1) continue;
            // restrict adjacency to the component
            std::vector<int> pos(cg.roots.size(), -1);
            for (std::size_t i = 0; i < comp.size(); ++i) pos[comp[i]] = static_cast<int>(i);
            std::vector<std::vector<std::pair<int, long>>> sub(comp.size());
            for (std::size_t i = 0; i < comp.size(); ++i)
                for (auto [nb, m] : cg.adj[comp[i]]) sub[i].emplace_back(pos[nb], m);
            for (auto [la, lb] : wilson_ust(sub, rng)) {
                int ga = comp[la], gb = comp[lb];
                if (gb < ga) std::swap(ga, gb);
                const auto& originals = cg.multi.at({ga, gb});
                chosen.push_back(
                    originals[rng.uniform_int(0, static_cast<int>(originals.size()) - 1)]);
            }
            for (std::size_t i = 1; i < comp.size(); ++i)
                dsu.unite(cg.roots[comp[0]], cg.roots[comp[i]]);
        }
    }

    std::vector<int> roots;
    for (int n : j.active_nodes())
        if (dsu.find(n) == n) roots.push_back(n);
    if (roots.size() >= 2) {
        std::vector<std::vector<int>> members(roots.size());
        std::vector<int> local(max_id + 1, -1);
        for (std::size_t i = 0; i < roots.size(); ++i) local[roots[i]] = static_cast<int>(i);
        for (int n : j.active_nodes()) members[local[dsu.find(n)]].push_back(n);

        std::vector<std::vector<std::pair<int, long>>> adj(roots.size());
        for (std::size_t a = 0; a < roots.size(); ++a)
            for (std::size_t b = 0; b < roots.size(); ++b)
                if (a != b)
                    adj[a].emplace_back(static_cast<int>(b),
                                        long(members[a].size()) * long(members[b].size()));
        for (auto [la, lb] : wilson_ust(adj, rng)) {
            int i = members[la][rng.uniform_int(0, static_cast<int>(members[la].size()) - 1)];
            int k2 = members[lb][rng.uniform_int(0, static_cast<int>(members[lb].size()) - 1)];
            chosen.emplace_back(i, k2);
        }
    }

    assert(static_cast<int>(chosen.size()) == c - 1);
    j.clear_links();
    for (auto [a, b] : chosen) j.add_link(a, b);
}

JunctionTree randomize_junction_tree(const JunctionTree& j, Rng& rng) {
    JunctionTree out = j;
    rerandomize_links(out, rng);
    return out;
}

}  // namespace jts
