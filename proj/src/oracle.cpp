#include "jts/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "jts/chordal.hpp"
#include "jts/errors.hpp"
#include "jts/tree_count.hpp"

namespace jts::oracle {

namespace {

double factorial(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double choose(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

JunctionTree tree_from_decomposition(int v, const CliqueDecomposition& dec) {
    JunctionTree j(v);
    std::vector<int> ids(dec.size());
    for (int i = 0; i < dec.size(); ++i) ids[i] = j.add_node(dec.cliques[i]);
    for (int i = 1; i < dec.size(); ++i) j.add_link(ids[dec.parents[i]], ids[i]);
    return j;
}

// junction property alone; the other tree invariants hold by construction
// for trees assembled from a clique list
bool has_junction_property(const JunctionTree& t) {
    for (int z = 0; z < t.num_vertices(); ++z) {
        const auto& holders = t.nodes_containing(z);
        if (holders.empty()) continue;
        std::vector<int> stack{holders[0]};
        std::vector<char> seen(16, 0);
        seen.resize(64);
        std::fill(seen.begin(), seen.end(), 0);
        auto mark = [&](int n) {
            if (n >= static_cast<int>(seen.size())) seen.resize(n + 1, 0);
            seen[n] = 1;
        };
        mark(holders[0]);
        int count = 0;
        while (!stack.empty()) {
            int n = stack.back();
            stack.pop_back();
            ++count;
            for (int l : t.links_of(n)) {
                if (!t.separator(l).contains(z)) continue;
                int o = t.link_other(l, n);
                if (o >= static_cast<int>(seen.size()) || !seen[o]) {
                    mark(o);
                    stack.push_back(o);
                }
            }
        }
        if (count != static_cast<int>(holders.size())) return false;
    }
    return true;
}

// labelled tree on c nodes from a Prüfer sequence
std::vector<std::pair<int, int>> prufer_decode(const std::vector<int>& seq, int c) {
    std::vector<int> degree(c, 1);
    for (int s : seq) ++degree[s];
    std::vector<std::pair<int, int>> edges;
    edges.reserve(c - 1);
    std::vector<char> used(c, 0);
    for (int s : seq) {
        int leaf = -1;
        for (int i = 0; i < c; ++i) {
            if (degree[i] == 1 && !used[i]) {
                leaf = i;
                break;
            }
        }
        edges.emplace_back(leaf, s);
        used[leaf] = 1;
        --degree[s];
    }
    int a = -1, b = -1;
    for (int i = 0; i < c; ++i) {
        if (degree[i] == 1 && !used[i]) (a < 0 ? a : b) = i;
    }
    edges.emplace_back(a, b);
    return edges;
}

}  // namespace

std::string clique_list_key(const JunctionTree& j) {
    std::vector<VertexSet> cs;
    cs.reserve(j.num_nodes());
    for (int n : j.active_nodes()) cs.push_back(j.clique(n));
    std::sort(cs.begin(), cs.end());
    std::ostringstream os;
    for (const auto& c : cs) os << c.to_string() << ";";
    return os.str();
}

std::string clique_list_key(const Graph& g) {
    auto mcs = maximum_cardinality_search(g);
    if (!mcs.decomposable) throw NotDecomposable("clique_list_key: graph is not chordal");
    auto cs = mcs.decomposition->cliques;
    std::sort(cs.begin(), cs.end());
    std::ostringstream os;
    for (const auto& c : cs) os << c.to_string() << ";";
    return os.str();
}

std::vector<std::size_t> GraphTable::order_by_mu_desc() const {
    std::vector<std::size_t> idx(rows_.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (rows_[a].mu != rows_[b].mu) return rows_[a].mu > rows_[b].mu;
        return rows_[a].edge_mask < rows_[b].edge_mask;
    });
    return idx;
}

std::int64_t GraphTable::count_with_mu_one() const {
    std::int64_t n = 0;
    for (const auto& r : rows_)
        if (r.mu == 1) ++n;
    return n;
}

BigInt GraphTable::total_mu() const {
    BigInt s = 0;
    for (const auto& r : rows_) s += r.mu;
    return s;
}

GraphTable enumerate_decomposable(int v) {
    GraphTable table(v);
    const std::uint64_t total = std::uint64_t{1} << (v * (v - 1) / 2);
    table.set_scanned(total);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        Graph g = Graph::from_edge_mask(v, mask);
        auto mcs = maximum_cardinality_search(g);
        if (!mcs.decomposable) continue;
        JunctionTree j = tree_from_decomposition(v, *mcs.decomposition);
        GraphRecord rec;
        rec.edge_mask = mask;
        rec.mu = count_junction_trees(j);
        table.add(clique_list_key(j), std::move(rec));
    }
    return table;
}

std::vector<JunctionTree> brute_force_junction_trees(const Graph& g) {
    auto mcs = maximum_cardinality_search(g);
    if (!mcs.decomposable)
        throw NotDecomposable("brute_force_junction_trees: graph is not chordal");
    const auto& cliques = mcs.decomposition->cliques;
    const int c = static_cast<int>(cliques.size());
    const int v = g.num_vertices();

    std::vector<JunctionTree> out;
    if (c == 1) {
        JunctionTree j(v);
        j.add_node(cliques[0]);
        out.push_back(std::move(j));
        return out;
    }

    std::vector<int> seq(std::max(c - 2, 0), 0);
    while (true) {
        auto edges = prufer_decode(seq, c);
        JunctionTree j(v);
        std::vector<int> ids(c);
        for (int i = 0; i < c; ++i) ids[i] = j.add_node(cliques[i]);
        for (auto [a, b] : edges) j.add_link(ids[a], ids[b]);
        if (has_junction_property(j)) out.push_back(std::move(j));

        int pos = static_cast<int>(seq.size()) - 1;
        while (pos >= 0 && seq[pos] == c - 1) seq[pos--] = 0;
        if (pos < 0) break;
        ++seq[pos];
    }
    return out;
}

std::vector<JunctionTree> all_junction_trees(int v) {
    std::vector<JunctionTree> out;
    const std::uint64_t total = std::uint64_t{1} << (v * (v - 1) / 2);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        Graph g = Graph::from_edge_mask(v, mask);
        if (!is_decomposable(g)) continue;
        auto trees = brute_force_junction_trees(g);
        for (auto& t : trees) out.push_back(std::move(t));
    }
    return out;
}

namespace {

// subsets of `pool` of size k, as sorted vectors
void for_each_subset(const std::vector<int>& pool, int k,
                     const std::function<void(const std::vector<int>&)>& f) {
    const int n = static_cast<int>(pool.size());
    if (k > n) return;
    std::vector<int> pick(k);
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        for (int i = 0; i < k; ++i) pick[i] = pool[idx[i]];
        f(pick);
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
}

MoveProposal connect_partial(const JunctionTree& j, int link, VertexSet X, VertexSet Y,
                             MoveArity arity) {
    MoveProposal p;
    p.direction = MoveDir::connect;
    p.arity = arity;
    p.anchor = link;
    p.cx = j.link_a(link);
    p.cy = j.link_b(link);
    p.S = j.separator(link);
    p.X = std::move(X);
    p.Y = std::move(Y);
    if (p.Y.min() < p.X.min()) {
        std::swap(p.X, p.Y);
        std::swap(p.cx, p.cy);
    }
    const bool x_exact = p.X.size() + p.S.size() == j.clique(p.cx).size();
    const bool y_exact = p.Y.size() + p.S.size() == j.clique(p.cy).size();
    p.case_tag = x_exact ? (y_exact ? MoveCase::a : MoveCase::c)
                         : (y_exact ? MoveCase::b : MoveCase::d);
    return p;
}

}  // namespace

std::vector<ProposalOutcome> enumerate_connect_proposals(const JunctionTree& j,
                                                         MoveArity arity) {
    std::vector<ProposalOutcome> out;
    const int L = j.num_links();
    if (L == 0) return out;
    for (int link : j.active_links()) {
        const VertexSet& S = j.separator(link);
        const std::vector<int> ax = j.clique(j.link_a(link)).set_difference(S).members();
        const std::vector<int> ay = j.clique(j.link_b(link)).set_difference(S).members();
        if (arity == MoveArity::single) {
            const double prob = 1.0 / (double(L) * ax.size() * ay.size());
            for (int x : ax) {
                for (int y : ay) {
                    out.push_back({connect_partial(j, link, VertexSet::singleton(x),
                                                   VertexSet::singleton(y), arity),
                                   prob});
                }
            }
        } else {
            for (int nx = 1; nx <= static_cast<int>(ax.size()); ++nx) {
                for (int ny = 1; ny <= static_cast<int>(ay.size()); ++ny) {
                    const double prob = 1.0 / (double(L) * ax.size() * choose(ax.size(), nx) *
                                               ay.size() * choose(ay.size(), ny));
                    for_each_subset(ax, nx, [&](const std::vector<int>& xs) {
                        for_each_subset(ay, ny, [&](const std::vector<int>& ys) {
                            out.push_back({connect_partial(j, link, VertexSet(xs),
                                                           VertexSet(ys), arity),
                                           prob});
                        });
                    });
                }
            }
        }
    }
    return out;
}

std::vector<ProposalOutcome> enumerate_disconnect_proposals(const JunctionTree& j,
                                                            MoveArity arity) {
    std::vector<ProposalOutcome> out;
    const int c = j.num_nodes();

    for (int node : j.active_nodes()) {
        const std::vector<int> members = j.clique(node).members();
        const int m = static_cast<int>(members.size());
        if (m == 1) continue;

        auto emit = [&](VertexSet X, VertexSet Y, double base) {
            MoveProposal p;
            p.direction = MoveDir::disconnect;
            p.arity = arity;
            p.anchor = node;
            p.X = std::move(X);
            p.Y = std::move(Y);
            p.S = j.clique(node).set_difference(p.X).set_difference(p.Y);
            if (p.Y.min() < p.X.min()) std::swap(p.X, p.Y);

            // classification, independent of the production scan
            int n_x = 0, n_y = 0, cx = -1, cy = -1;
            std::vector<int> n0;
            for (int l : j.links_of(node)) {
                const VertexSet& sep = j.separator(l);
                const bool hx = sep.intersects(p.X);
                const bool hy = sep.intersects(p.Y);
                if (hx && hy) return;  // rejection
                if (hx) {
                    ++n_x;
                    if (p.X.subset_of(sep) && p.S.subset_of(sep)) {
                        int o = j.link_other(l, node);
                        if (cx < 0 || o < cx) cx = o;
                    }
                } else if (hy) {
                    ++n_y;
                    if (p.Y.subset_of(sep) && p.S.subset_of(sep)) {
                        int o = j.link_other(l, node);
                        if (cy < 0 || o < cy) cy = o;
                    }
                } else {
                    n0.push_back(l);
                }
            }
            if (cx < 0 && cy < 0) {
                p.case_tag = MoveCase::a;
            } else if (cx >= 0 && cy < 0) {
                if (n_x != 1) return;
                p.case_tag = MoveCase::b;
            } else if (cx < 0 && cy >= 0) {
                if (n_y != 1) return;
                p.case_tag = MoveCase::c;
            } else {
                if (n_x != 1 || n_y != 1 || !n0.empty()) return;
                p.case_tag = MoveCase::d;
            }
            p.cx = cx;
            p.cy = cy;

            if (p.case_tag == MoveCase::a && !n0.empty()) {
                const int k = static_cast<int>(n0.size());
                for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
                    MoveProposal q = p;
                    for (int i = 0; i < k; ++i)
                        q.n0_assign.emplace_back(n0[i], (bits >> i & 1) != 0);
                    out.push_back({std::move(q), base * std::pow(0.5, k)});
                }
            } else {
                out.push_back({std::move(p), base});
            }
        };

        if (arity == MoveArity::single) {
            const double base = 1.0 / (double(c) * m * (m - 1));
            for (int x : members) {
                for (int y : members) {
                    if (x == y) continue;
                    emit(VertexSet::singleton(x), VertexSet::singleton(y), base);
                }
            }
        } else {
            for (int bigm = 2; bigm <= m; ++bigm) {
                for (int n = 1; n <= bigm - 1; ++n) {
                    const double base = (1.0 / c) * (1.0 / (m - 1)) * (1.0 / (bigm - 1)) *
                                        (factorial(n) * factorial(bigm - n) *
                                         factorial(m - bigm) / factorial(m));
                    for_each_subset(members, n, [&](const std::vector<int>& xs) {
                        VertexSet X(xs);
                        std::vector<int> rest;
                        for (int z : members)
                            if (!X.contains(z)) rest.push_back(z);
                        for_each_subset(rest, bigm - n, [&](const std::vector<int>& ys) {
                            emit(X, VertexSet(ys), base);
                        });
                    });
                }
            }
        }
    }
    return out;
}

TransitionCheck transition_matrix_check(int v,
                                        const std::function<double(const JunctionTree&)>& log_pi,
                                        MoveArity arity, AcceptRule rule) {
    auto states = all_junction_trees(v);
    const int n = static_cast<int>(states.size());
    std::unordered_map<std::string, int> index;
    index.reserve(n);
    for (int i = 0; i < n; ++i) index.emplace(states[i].canonical_key(), i);

    std::vector<double> logpi(n);
    for (int i = 0; i < n; ++i) logpi[i] = log_pi(states[i]);
    const double mx = *std::max_element(logpi.begin(), logpi.end());
    std::vector<double> pi(n);
    double zsum = 0;
    for (int i = 0; i < n; ++i) {
        pi[i] = std::exp(logpi[i] - mx);
        zsum += pi[i];
    }
    for (auto& x : pi) x /= zsum;

    TransitionCheck res;
    res.states = n;

    std::vector<double> flow(n, 0.0);  // accumulates (pi P)[j]
    for (int i = 0; i < n; ++i) {
        const JunctionTree& J = states[i];
        double stay = 1.0;
        double connect_mass = 0.0;

        auto handle = [&](const ProposalOutcome& o) {
            MoveProposal p = o.proposal;
            p.log_q_forward = proposal_probability(J, p);
            JunctionTree J2 = apply_move(J, p);
            p.log_q_reverse = reverse_proposal(J2, p);
            auto it = index.find(J2.canonical_key());
            if (it == index.end()) throw std::logic_error("transition lands outside state space");
            const int k = it->second;
            const double dlpi = logpi[k] - logpi[i];
            const double lqr = p.log_q_reverse - p.log_q_forward;
            const double a_std = std::min(1.0, std::exp(dlpi + lqr));
            const double a_ts = std::min(1.0, std::exp(dlpi)) * std::min(1.0, std::exp(lqr));
            res.peskun_violation = std::max(res.peskun_violation, a_ts - a_std);
            const double alpha = rule == AcceptRule::standard ? a_std : a_ts;
            const double prob = 0.5 * o.prob;  // fair coin between move types
            flow[k] += pi[i] * prob * alpha;
            stay -= prob * alpha;
        };

        for (const auto& o : enumerate_connect_proposals(J, arity)) {
            connect_mass += o.prob;
            handle(o);
        }
        for (const auto& o : enumerate_disconnect_proposals(J, arity)) handle(o);

        if (J.num_links() > 0)
            res.max_row_error = std::max(res.max_row_error, std::abs(connect_mass - 1.0));
        flow[i] += pi[i] * stay;
    }

    for (int k = 0; k < n; ++k)
        res.residual = std::max(res.residual, std::abs(flow[k] - pi[k]));
    return res;
}

}  // namespace jts::oracle
