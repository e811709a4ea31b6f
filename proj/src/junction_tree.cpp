#include "jts/junction_tree.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>
#include <stdexcept>

#include "jts/errors.hpp"

namespace jts {

void JunctionTree::index_insert(std::vector<int>& v, int x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
}

void JunctionTree::index_erase(std::vector<int>& v, int x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    assert(it != v.end() && *it == x);
    v.erase(it);
}

int JunctionTree::add_node(const VertexSet& clique) {
    int id;
    if (!free_nodes_.empty()) {
        id = free_nodes_.front();
        free_nodes_.pop_front();
    } else {
        id = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        node_pos_.push_back(-1);
    }
    nodes_[id].clique = clique;
    nodes_[id].links.clear();
    nodes_[id].active = true;
    node_pos_[id] = static_cast<int>(active_nodes_.size());
    active_nodes_.push_back(id);
    for (int z : clique) index_insert(vertex_nodes_[z], id);
    return id;
}

void JunctionTree::remove_node(int node) {
    assert(node_active(node));
    assert(nodes_[node].links.empty());
    for (int z : nodes_[node].clique) index_erase(vertex_nodes_[z], node);
    nodes_[node].active = false;
    int pos = node_pos_[node];
    int last = active_nodes_.back();
    active_nodes_[pos] = last;
    node_pos_[last] = pos;
    active_nodes_.pop_back();
    free_nodes_.push_back(node);
}

int JunctionTree::add_link(int a, int b) {
    assert(node_active(a) && node_active(b) && a != b);
    int id;
    if (!free_links_.empty()) {
        id = free_links_.front();
        free_links_.pop_front();
    } else {
        id = static_cast<int>(links_.size());
        links_.emplace_back();
        link_pos_.push_back(-1);
    }
    links_[id].a = a;
    links_[id].b = b;
    links_[id].sep = nodes_[a].clique.set_intersection(nodes_[b].clique);
    links_[id].active = true;
    link_pos_[id] = static_cast<int>(active_links_.size());
    active_links_.push_back(id);
    nodes_[a].links.push_back(id);
    nodes_[b].links.push_back(id);
    return id;
}

void JunctionTree::remove_link(int id) {
    assert(link_active(id));
    auto drop = [&](int node) {
        auto& ls = nodes_[node].links;
        ls.erase(std::find(ls.begin(), ls.end(), id));
    };
    drop(links_[id].a);
    drop(links_[id].b);
    links_[id].active = false;
    int pos = link_pos_[id];
    int last = active_links_.back();
    active_links_[pos] = last;
    link_pos_[last] = pos;
    active_links_.pop_back();
    free_links_.push_back(id);
}

void JunctionTree::move_link_end(int id, int from, int to) {
    assert(link_active(id) && node_active(to));
    auto& lk = links_[id];
    assert(lk.a == from || lk.b == from);
    (lk.a == from ? lk.a : lk.b) = to;
    auto& ls = nodes_[from].links;
    ls.erase(std::find(ls.begin(), ls.end(), id));
    nodes_[to].links.push_back(id);
    lk.sep = nodes_[lk.a].clique.set_intersection(nodes_[lk.b].clique);
}

void JunctionTree::update_clique(int node, const VertexSet& next) {
    assert(node_active(node));
    auto& nd = nodes_[node];
    for (int z : nd.clique)
        if (!next.contains(z)) index_erase(vertex_nodes_[z], node);
    for (int z : next)
        if (!nd.clique.contains(z)) index_insert(vertex_nodes_[z], node);
    nd.clique = next;
    for (int id : nd.links) {
        auto& lk = links_[id];
        lk.sep = nodes_[lk.a].clique.set_intersection(nodes_[lk.b].clique);
    }
}

void JunctionTree::clear_links() {
    while (!active_links_.empty()) remove_link(active_links_.back());
}

Graph JunctionTree::graph_of() const {
    Graph g(num_vertices_);
    for (int n : active_nodes_) {
        const auto& m = nodes_[n].clique.members();
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t k = i + 1; k < m.size(); ++k) g.add_edge(m[i], m[k]);
    }
    return g;
}

long JunctionTree::num_graph_edges() const {
    auto pairs = [](long k) { return k * (k - 1) / 2; };
    long e = 0;
    for (int n : active_nodes_) e += pairs(nodes_[n].clique.size());
    for (int l : active_links_) e -= pairs(links_[l].sep.size());
    return e;
}

bool JunctionTree::validate() const {
    if (active_nodes_.empty()) return false;
    if (num_links() != num_nodes() - 1) return false;

    // every link joins two distinct active nodes and stores the exact
    // clique intersection
    for (int l : active_links_) {
        const auto& lk = links_[l];
        if (!node_active(lk.a) || !node_active(lk.b) || lk.a == lk.b) return false;
        if (lk.sep != nodes_[lk.a].clique.set_intersection(nodes_[lk.b].clique)) return false;
    }

    // spanning connectivity
    {
        std::vector<int> stack{active_nodes_[0]};
        std::vector<char> seen(nodes_.size(), 0);
        seen[active_nodes_[0]] = 1;
        int count = 0;
        while (!stack.empty()) {
            int n = stack.back();
            stack.pop_back();
            ++count;
            for (int l : nodes_[n].links) {
                int o = link_other(l, n);
                if (!seen[o]) {
                    seen[o] = 1;
                    stack.push_back(o);
                }
            }
        }
        if (count != num_nodes()) return false;
    }

    // junction property: nodes containing any vertex induce a connected
    // subtree
    for (int z = 0; z < num_vertices_; ++z) {
        const auto& holders = vertex_nodes_[z];
        if (holders.empty()) return false;
        for (int n : holders)
            if (!node_active(n) || !nodes_[n].clique.contains(z)) return false;
        std::vector<int> stack{holders[0]};
        std::vector<char> seen(nodes_.size(), 0);
        seen[holders[0]] = 1;
        int count = 0;
        while (!stack.empty()) {
            int n = stack.back();
            stack.pop_back();
            ++count;
            for (int l : nodes_[n].links) {
                if (!links_[l].sep.contains(z)) continue;
                int o = link_other(l, n);
                if (!seen[o]) {
                    seen[o] = 1;
                    stack.push_back(o);
                }
            }
        }
        if (count != static_cast<int>(holders.size())) return false;
    }

    // node sets are exactly the cliques of the represented graph
    {
        auto mcs = maximum_cardinality_search(graph_of());
        if (!mcs.decomposable) return false;
        std::vector<VertexSet> ours, theirs;
        for (int n : active_nodes_) ours.push_back(nodes_[n].clique);
        theirs = mcs.decomposition->cliques;
        std::sort(ours.begin(), ours.end());
        std::sort(theirs.begin(), theirs.end());
        if (ours != theirs) return false;
    }
    return true;
}

std::string JunctionTree::canonical_key() const {
    std::vector<VertexSet> cs;
    cs.reserve(active_nodes_.size());
    for (int n : active_nodes_) cs.push_back(nodes_[n].clique);
    std::sort(cs.begin(), cs.end());

    std::vector<std::pair<VertexSet, VertexSet>> ls;
    ls.reserve(active_links_.size());
    for (int l : active_links_) {
        VertexSet a = nodes_[links_[l].a].clique;
        VertexSet b = nodes_[links_[l].b].clique;
        if (b < a) std::swap(a, b);
        ls.emplace_back(std::move(a), std::move(b));
    }
    std::sort(ls.begin(), ls.end());

    std::ostringstream os;
    for (const auto& c : cs) os << "C:" << c.to_string() << ";";
    for (const auto& [a, b] : ls) os << "L:" << a.to_string() << "/" << b.to_string() << ";";
    return os.str();
}

std::string JunctionTree::dump() const {
    std::ostringstream os;
    for (int n : active_nodes_) os << "N" << n << ": " << nodes_[n].clique.to_string() << "\n";
    for (int l : active_links_) {
        os << "L: " << links_[l].a << " " << links_[l].b << " | " << links_[l].sep.to_string()
           << "\n";
    }
    return os.str();
}

JunctionTree build_junction_tree(const Graph& g) {
    auto mcs = maximum_cardinality_search(g);
    if (!mcs.decomposable) throw NotDecomposable("build_junction_tree: graph is not chordal");
    const auto& dec = *mcs.decomposition;

    JunctionTree j(g.num_vertices());
    std::vector<int> ids(dec.size());
    for (int i = 0; i < dec.size(); ++i) ids[i] = j.add_node(dec.cliques[i]);
    for (int i = 1; i < dec.size(); ++i) j.add_link(ids[dec.parents[i]], ids[i]);
    return j;
}

bool validate(const JunctionTree& j) { return j.validate(); }

Graph graph_of(const JunctionTree& j) { return j.graph_of(); }

}  // namespace jts
