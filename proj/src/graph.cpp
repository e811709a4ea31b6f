#include "jts/graph.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace jts {

Graph::Graph(int v) : v_(v), adj_(v, Bitset(v)) {
    if (v < 1) throw std::invalid_argument("Graph: vertex count must be >= 1");
}

Graph Graph::from_edge_mask(int v, std::uint64_t mask) {
    Graph g(v);
    int bit = 0;
    for (int j = 1; j < v; ++j) {
        for (int i = 0; i < j; ++i, ++bit) {
            if (mask >> bit & 1u) g.add_edge(i, j);
        }
    }
    return g;
}

std::uint64_t Graph::edge_mask() const {
    std::uint64_t mask = 0;
    int bit = 0;
    for (int j = 1; j < v_; ++j) {
        for (int i = 0; i < j; ++i, ++bit) {
            if (has_edge(i, j)) mask |= std::uint64_t{1} << bit;
        }
    }
    return mask;
}

void Graph::check_vertex(int i) const {
    if (i < 0 || i >= v_) throw std::out_of_range("Graph: vertex label out of range");
}

void Graph::add_edge(int i, int j) {
    check_vertex(i);
    check_vertex(j);
    if (i == j) throw std::invalid_argument("Graph: self-loop");
    if (adj_[i].test(j)) return;
    adj_[i].set(j);
    adj_[j].set(i);
    ++edges_;
}

void Graph::remove_edge(int i, int j) {
    check_vertex(i);
    check_vertex(j);
    if (!adj_[i].test(j)) return;
    adj_[i].reset(j);
    adj_[j].reset(i);
    --edges_;
}

void Graph::toggle_edge(int i, int j) {
    if (has_edge(i, j))
        remove_edge(i, j);
    else
        add_edge(i, j);
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edges_);
    for (int i = 0; i < v_; ++i) {
        adj_[i].for_each([&](int j) {
            if (j > i) out.emplace_back(i, j);
        });
    }
    return out;
}

Graph induced_subgraph(const Graph& g, const VertexSet& u) {
    for (int x : u) {
        if (x < 0 || x >= g.num_vertices())
            throw std::out_of_range("induced_subgraph: unknown vertex label");
    }
    const auto& m = u.members();
    Graph sub(u.size());
    for (int a = 0; a < u.size(); ++a) {
        for (int b = a + 1; b < u.size(); ++b) {
            if (g.has_edge(m[a], m[b])) sub.add_edge(a, b);
        }
    }
    return sub;
}

Graph read_edge_list(std::istream& in) {
    std::string line;
    int v = -1;
    Graph g;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (v < 0) {
            std::string tag;
            if (!(ls >> tag)) continue;  // blank
            if (tag != "v") throw std::runtime_error("edge list: expected header 'v <count>'");
            if (!(ls >> v) || v < 1) throw std::runtime_error("edge list: bad vertex count");
            g = Graph(v);
            continue;
        }
        int i, j;
        if (!(ls >> i)) continue;
        if (!(ls >> j)) throw std::runtime_error("edge list: odd vertex in edge line");
        g.add_edge(i, j);
    }
    if (v < 0) throw std::runtime_error("edge list: missing header");
    return g;
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << "v " << g.num_vertices() << "\n";
    for (auto [i, j] : g.edge_list()) out << i << " " << j << "\n";
}

void write_edge_list_file(const std::string& path, const Graph& g,
                          const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file: " + path);
    for (const auto& c : comments) out << "# " << c << "\n";
    write_edge_list(out, g);
}

}  // namespace jts
