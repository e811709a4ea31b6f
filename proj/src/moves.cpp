#include "jts/moves.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "jts/errors.hpp"

namespace jts {

namespace {

constexpr double kLog2 = 0.69314718055994530942;

double log_fact(int n) {
    static const auto table = [] {
        std::array<double, 64> t{};
        double acc = 0.0;
        for (int i = 0; i < 64; ++i) {
            if (i >= 2) acc += std::log(double(i));
            t[i] = acc;
        }
        return t;
    }();
    return n < 64 ? table[n] : std::lgamma(double(n) + 1.0);
}

double log_choose(int n, int k) { return log_fact(n) - log_fact(k) - log_fact(n - k); }

void require(bool ok, const char* what) {
    if (!ok) throw InvalidProposal(what);
}

// q for a connect move: uniform link, then X and Y drawn from the two
// flanking cliques minus the separator (sizes axs, ays)
double connect_logq(MoveArity arity, int num_links, int axs, int ays, int nx, int ny) {
    double lq = -std::log(double(num_links)) - std::log(double(axs)) - std::log(double(ays));
    if (arity == MoveArity::multi) lq -= log_choose(axs, nx) + log_choose(ays, ny);
    return lq;
}

// q for a disconnect move: uniform clique of size m, partition (X, Y, S)
// of sizes (nx, ny, m-nx-ny); the factor 2 folds the two orderings of the
// unordered pair {X, Y}; case (a) pays 2^-n0 for the neighbour assignment
double disconnect_logq(MoveArity arity, int num_cliques, int m, int nx, int ny, MoveCase t,
                       int n0) {
    double lq = kLog2 - std::log(double(num_cliques));
    if (arity == MoveArity::single) {
        lq -= std::log(double(m)) + std::log(double(m - 1));
    } else {
        const int bigm = nx + ny;
        lq -= std::log(double(m - 1)) + std::log(double(bigm - 1));
        lq += log_fact(nx) + log_fact(ny) + log_fact(m - bigm) - log_fact(m);
    }
    if (t == MoveCase::a) lq -= n0 * kLog2;
    return lq;
}

VertexSet sample_subset(const std::vector<int>& pool, int want, Rng& rng) {
    std::vector<int> v = pool;
    for (int i = 0; i < want; ++i) {
        int k = rng.uniform_int(i, static_cast<int>(v.size()) - 1);
        std::swap(v[i], v[k]);
    }
    v.resize(want);
    return VertexSet(std::move(v));
}

int find_node_by_clique(const JunctionTree& t, const VertexSet& s) {
    for (int n : t.nodes_containing(s.min()))
        if (t.clique(n) == s) return n;
    return -1;
}

int find_link_between(const JunctionTree& t, int a, int b) {
    for (int l : t.links_of(a))
        if (t.link_other(l, a) == b) return l;
    return -1;
}

// neighbour classification for a disconnect of (X, Y) from clique `node`;
// since X, Y ⊆ clique, a neighbour meets X exactly when its separator does
struct NeighborScan {
    int n_x = 0, n_y = 0;
    int cx = -1, cy = -1;  // lowest-index neighbours containing X∪S / Y∪S
    std::vector<int> n0;
    bool both = false;  // some neighbour meets X and Y: move impossible
};

NeighborScan scan_neighbors(const JunctionTree& j, int node, const VertexSet& X,
                            const VertexSet& Y, const VertexSet& S) {
    NeighborScan r;
    for (int l : j.links_of(node)) {
        const VertexSet& sep = j.separator(l);
        const bool hx = sep.intersects(X);
        const bool hy = sep.intersects(Y);
        if (hx && hy) {
            r.both = true;
            return r;
        }
        if (hx) {
            ++r.n_x;
            if (X.subset_of(sep) && S.subset_of(sep)) {
                int o = j.link_other(l, node);
                if (r.cx < 0 || o < r.cx) r.cx = o;
            }
        } else if (hy) {
            ++r.n_y;
            if (Y.subset_of(sep) && S.subset_of(sep)) {
                int o = j.link_other(l, node);
                if (r.cy < 0 || o < r.cy) r.cy = o;
            }
        } else {
            r.n0.push_back(l);
        }
    }
    return r;
}

// case from the scan; nullopt when the cardinality conditions fail
std::optional<MoveCase> classify(const NeighborScan& s) {
    if (s.both) return std::nullopt;
    if (s.cx < 0 && s.cy < 0) return MoveCase::a;
    if (s.cx >= 0 && s.cy < 0) {
        if (s.n_x != 1) return std::nullopt;
        return MoveCase::b;
    }
    if (s.cx < 0 && s.cy >= 0) {
        if (s.n_y != 1) return std::nullopt;
        return MoveCase::c;
    }
    if (s.n_x != 1 || s.n_y != 1 || !s.n0.empty()) return std::nullopt;
    return MoveCase::d;
}

}  // namespace

long edge_delta(const MoveProposal& p) {
    long d = long(p.X.size()) * long(p.Y.size());
    return p.direction == MoveDir::connect ? d : -d;
}

std::optional<MoveProposal> propose_connect(const JunctionTree& j, MoveArity arity, Rng& rng) {
    if (j.num_links() == 0) return std::nullopt;  // single clique

    MoveProposal p;
    p.direction = MoveDir::connect;
    p.arity = arity;
    p.anchor = j.random_link(rng);
    p.cx = j.link_a(p.anchor);
    p.cy = j.link_b(p.anchor);
    p.S = j.separator(p.anchor);

    VertexSet ax = j.clique(p.cx).set_difference(p.S);
    VertexSet ay = j.clique(p.cy).set_difference(p.S);
    if (arity == MoveArity::single) {
        p.X = VertexSet::singleton(ax.members()[rng.uniform_int(0, ax.size() - 1)]);
        p.Y = VertexSet::singleton(ay.members()[rng.uniform_int(0, ay.size() - 1)]);
    } else {
        p.X = sample_subset(ax.members(), rng.uniform_int(1, ax.size()), rng);
        p.Y = sample_subset(ay.members(), rng.uniform_int(1, ay.size()), rng);
    }
    p.log_q_forward =
        connect_logq(arity, j.num_links(), ax.size(), ay.size(), p.X.size(), p.Y.size());

    if (p.Y.min() < p.X.min()) {
        std::swap(p.X, p.Y);
        std::swap(p.cx, p.cy);
        std::swap(ax, ay);
    }
    const bool x_exact = p.X.size() == ax.size();
    const bool y_exact = p.Y.size() == ay.size();
    p.case_tag = x_exact ? (y_exact ? MoveCase::a : MoveCase::c)
                         : (y_exact ? MoveCase::b : MoveCase::d);

    // reverse move: disconnect (X, Y) from the merged clique in J'
    int c2 = j.num_nodes();
    if (p.case_tag == MoveCase::a) c2 -= 1;
    if (p.case_tag == MoveCase::d) c2 += 1;
    int n0_rev = 0;
    if (p.case_tag == MoveCase::a) {
        for (int l : j.links_of(p.cx))
            if (l != p.anchor && !j.separator(l).intersects(p.X)) ++n0_rev;
        for (int l : j.links_of(p.cy))
            if (l != p.anchor && !j.separator(l).intersects(p.Y)) ++n0_rev;
    }
    const int m2 = p.X.size() + p.Y.size() + p.S.size();
    p.log_q_reverse =
        disconnect_logq(arity, c2, m2, p.X.size(), p.Y.size(), p.case_tag, n0_rev);
    return p;
}

std::optional<MoveProposal> propose_disconnect(const JunctionTree& j, MoveArity arity,
                                               Rng& rng) {
    MoveProposal p;
    p.direction = MoveDir::disconnect;
    p.arity = arity;
    p.anchor = j.random_node(rng);
    const VertexSet& C = j.clique(p.anchor);
    const int m = C.size();
    if (m == 1) return std::nullopt;

    if (arity == MoveArity::single) {
        int i = rng.uniform_int(0, m - 1);
        int k = rng.uniform_int(0, m - 2);
        if (k >= i) ++k;
        p.X = VertexSet::singleton(C.members()[i]);
        p.Y = VertexSet::singleton(C.members()[k]);
        p.S = C.set_difference(p.X).set_difference(p.Y);
    } else {
        const int bigm = rng.uniform_int(2, m);
        const int n = rng.uniform_int(1, bigm - 1);
        std::vector<int> perm = C.members();
        for (int t = 0; t < bigm; ++t) {
            int k = rng.uniform_int(t, m - 1);
            std::swap(perm[t], perm[k]);
        }
        p.X = VertexSet(std::vector<int>(perm.begin(), perm.begin() + n));
        p.Y = VertexSet(std::vector<int>(perm.begin() + n, perm.begin() + bigm));
        p.S = VertexSet(std::vector<int>(perm.begin() + bigm, perm.end()));
    }
    if (p.Y.min() < p.X.min()) std::swap(p.X, p.Y);

    NeighborScan scan = scan_neighbors(j, p.anchor, p.X, p.Y, p.S);
    auto t = classify(scan);
    if (!t) return std::nullopt;
    p.case_tag = *t;
    p.cx = scan.cx;
    p.cy = scan.cy;
    if (p.case_tag == MoveCase::a) {
        p.n0_assign.reserve(scan.n0.size());
        for (int l : scan.n0) p.n0_assign.emplace_back(l, rng.coin());
    }
    p.log_q_forward = disconnect_logq(arity, j.num_nodes(), m, p.X.size(), p.Y.size(),
                                      p.case_tag, static_cast<int>(scan.n0.size()));

    // reverse move: connect X and Y across the separator-S link in J'
    int c2 = j.num_nodes();
    if (p.case_tag == MoveCase::a) c2 += 1;
    if (p.case_tag == MoveCase::d) c2 -= 1;
    const int s = p.S.size();
    const int ax2 = (p.case_tag == MoveCase::b || p.case_tag == MoveCase::d)
                        ? j.clique(p.cx).size() - s
                        : p.X.size();
    const int ay2 = (p.case_tag == MoveCase::c || p.case_tag == MoveCase::d)
                        ? j.clique(p.cy).size() - s
                        : p.Y.size();
    p.log_q_reverse = connect_logq(arity, c2 - 1, ax2, ay2, p.X.size(), p.Y.size());
    return p;
}

JunctionTree apply_connect(const JunctionTree& j, const MoveProposal& p) {
    require(p.direction == MoveDir::connect, "apply_connect: wrong direction");
    require(j.link_active(p.anchor), "apply_connect: anchor link not active");
    const int a = j.link_a(p.anchor), b = j.link_b(p.anchor);
    require((p.cx == a && p.cy == b) || (p.cx == b && p.cy == a),
            "apply_connect: endpoints do not match anchor");
    require(p.S == j.separator(p.anchor), "apply_connect: separator mismatch");
    require(!p.X.empty() && !p.Y.empty(), "apply_connect: empty X or Y");
    require(!p.X.intersects(p.S) && !p.Y.intersects(p.S), "apply_connect: X/Y meet S");
    require(p.X.subset_of(j.clique(p.cx)), "apply_connect: X outside C_X");
    require(p.Y.subset_of(j.clique(p.cy)), "apply_connect: Y outside C_Y");
    const bool x_exact = p.X.size() + p.S.size() == j.clique(p.cx).size();
    const bool y_exact = p.Y.size() + p.S.size() == j.clique(p.cy).size();
    const MoveCase expect = x_exact ? (y_exact ? MoveCase::a : MoveCase::c)
                                    : (y_exact ? MoveCase::b : MoveCase::d);
    require(expect == p.case_tag, "apply_connect: case tag mismatch");

    JunctionTree t = j;
    switch (p.case_tag) {
        case MoveCase::a: {
            // C_X, C_Y and the link collapse into one clique X∪Y∪S
            t.remove_link(p.anchor);
            const int nn = t.add_node(p.X.set_union(p.Y).set_union(p.S));
            for (int l : std::vector<int>(t.links_of(p.cx))) t.move_link_end(l, p.cx, nn);
            for (int l : std::vector<int>(t.links_of(p.cy))) t.move_link_end(l, p.cy, nn);
            t.remove_node(p.cx);
            t.remove_node(p.cy);
            break;
        }
        case MoveCase::b:
            // X joins S and C_Y
            t.update_clique(p.cy, t.clique(p.cy).set_union(p.X));
            break;
        case MoveCase::c:
            t.update_clique(p.cx, t.clique(p.cx).set_union(p.Y));
            break;
        case MoveCase::d: {
            // the link becomes a separator / clique / separator triple
            t.remove_link(p.anchor);
            const int nn = t.add_node(p.X.set_union(p.Y).set_union(p.S));
            t.add_link(p.cx, nn);
            t.add_link(nn, p.cy);
            break;
        }
    }
    return t;
}

JunctionTree apply_disconnect(const JunctionTree& j, const MoveProposal& p) {
    require(p.direction == MoveDir::disconnect, "apply_disconnect: wrong direction");
    require(j.node_active(p.anchor), "apply_disconnect: anchor node not active");
    const VertexSet& C = j.clique(p.anchor);
    require(!p.X.empty() && !p.Y.empty(), "apply_disconnect: empty X or Y");
    require(p.X.set_union(p.Y).set_union(p.S) == C &&
                p.X.size() + p.Y.size() + p.S.size() == C.size(),
            "apply_disconnect: X,Y,S do not partition the clique");

    JunctionTree t = j;
    switch (p.case_tag) {
        case MoveCase::a: {
            const int nx = t.add_node(p.X.set_union(p.S));
            const int ny = t.add_node(p.Y.set_union(p.S));
            for (int l : std::vector<int>(t.links_of(p.anchor))) {
                const VertexSet& sep = t.separator(l);
                int dest;
                if (sep.intersects(p.X)) {
                    dest = nx;
                } else if (sep.intersects(p.Y)) {
                    dest = ny;
                } else {
                    auto it = std::find_if(p.n0_assign.begin(), p.n0_assign.end(),
                                           [l](const auto& e) { return e.first == l; });
                    require(it != p.n0_assign.end(), "apply_disconnect: missing N0 side");
                    dest = it->second ? nx : ny;
                }
                t.move_link_end(l, p.anchor, dest);
            }
            t.remove_node(p.anchor);
            t.add_link(nx, ny);
            break;
        }
        case MoveCase::b: {
            require(t.node_active(p.cx), "apply_disconnect: C_X missing");
            t.update_clique(p.anchor, p.Y.set_union(p.S));
            break;
        }
        case MoveCase::c: {
            require(t.node_active(p.cy), "apply_disconnect: C_Y missing");
            t.update_clique(p.anchor, p.X.set_union(p.S));
            break;
        }
        case MoveCase::d: {
            const int l1 = find_link_between(t, p.anchor, p.cx);
            const int l2 = find_link_between(t, p.anchor, p.cy);
            require(l1 >= 0 && l2 >= 0, "apply_disconnect: C_X/C_Y not adjacent");
            t.remove_link(l1);
            t.remove_link(l2);
            t.remove_node(p.anchor);
            t.add_link(p.cx, p.cy);
            break;
        }
    }
    return t;
}

JunctionTree apply_move(const JunctionTree& j, const MoveProposal& p) {
    return p.direction == MoveDir::connect ? apply_connect(j, p) : apply_disconnect(j, p);
}

double proposal_probability(const JunctionTree& j, const MoveProposal& p) {
    if (p.direction == MoveDir::connect) {
        require(j.link_active(p.anchor), "proposal_probability: anchor link not active");
        const int a = j.link_a(p.anchor), b = j.link_b(p.anchor);
        require((p.cx == a && p.cy == b) || (p.cx == b && p.cy == a),
                "proposal_probability: endpoints do not match anchor");
        require(p.S == j.separator(p.anchor), "proposal_probability: separator mismatch");
        require(!p.X.empty() && !p.Y.empty(), "proposal_probability: empty X or Y");
        require(!p.X.intersects(p.S) && !p.Y.intersects(p.S),
                "proposal_probability: X/Y meet S");
        require(p.X.subset_of(j.clique(p.cx)) && p.Y.subset_of(j.clique(p.cy)),
                "proposal_probability: X/Y outside flanking cliques");
        if (p.arity == MoveArity::single)
            require(p.X.size() == 1 && p.Y.size() == 1,
                    "proposal_probability: single-edge move with non-singleton X/Y");
        const int axs = j.clique(p.cx).size() - p.S.size();
        const int ays = j.clique(p.cy).size() - p.S.size();
        return connect_logq(p.arity, j.num_links(), axs, ays, p.X.size(), p.Y.size());
    }

    require(j.node_active(p.anchor), "proposal_probability: anchor node not active");
    const VertexSet& C = j.clique(p.anchor);
    require(p.X.set_union(p.Y).set_union(p.S) == C &&
                p.X.size() + p.Y.size() + p.S.size() == C.size(),
            "proposal_probability: X,Y,S do not partition the clique");
    require(!p.X.empty() && !p.Y.empty(), "proposal_probability: empty X or Y");
    if (p.arity == MoveArity::single)
        require(p.X.size() == 1 && p.Y.size() == 1,
                "proposal_probability: single-edge move with non-singleton X/Y");

    NeighborScan scan = scan_neighbors(j, p.anchor, p.X, p.Y, p.S);
    auto t = classify(scan);
    require(t.has_value(), "proposal_probability: disconnect is not valid here");
    require(*t == p.case_tag, "proposal_probability: case tag mismatch");
    require(scan.cx == p.cx && scan.cy == p.cy, "proposal_probability: C_X/C_Y mismatch");
    return disconnect_logq(p.arity, j.num_nodes(), C.size(), p.X.size(), p.Y.size(),
                           p.case_tag, static_cast<int>(scan.n0.size()));
}

namespace {

// reverse move without the N0 side information
MoveProposal reverse_skeleton(const JunctionTree& j_new, const MoveProposal& p) {
    MoveProposal r;
    r.arity = p.arity;
    r.case_tag = p.case_tag;
    r.X = p.X;
    r.Y = p.Y;
    r.S = p.S;
    r.log_q_forward = p.log_q_reverse;
    r.log_q_reverse = p.log_q_forward;

    if (p.direction == MoveDir::connect) {
        r.direction = MoveDir::disconnect;
        r.anchor = find_node_by_clique(j_new, p.X.set_union(p.Y).set_union(p.S));
        require(r.anchor >= 0, "reverse_proposal: merged clique not found");
        switch (p.case_tag) {
            case MoveCase::a:
                for (int l : j_new.links_of(r.anchor)) {
                    const VertexSet& sep = j_new.separator(l);
                    if (!sep.intersects(p.X) && !sep.intersects(p.Y))
                        r.n0_assign.emplace_back(l, true);
                }
                break;
            case MoveCase::b:
                r.cx = p.cx;
                break;
            case MoveCase::c:
                r.cy = p.cy;
                break;
            case MoveCase::d:
                r.cx = p.cx;
                r.cy = p.cy;
                break;
        }
    } else {
        r.direction = MoveDir::connect;
        int xn = -1, yn = -1;
        switch (p.case_tag) {
            case MoveCase::a:
                xn = find_node_by_clique(j_new, p.X.set_union(p.S));
                yn = find_node_by_clique(j_new, p.Y.set_union(p.S));
                break;
            case MoveCase::b:
                xn = p.cx;
                yn = p.anchor;
                break;
            case MoveCase::c:
                xn = p.anchor;
                yn = p.cy;
                break;
            case MoveCase::d:
                xn = p.cx;
                yn = p.cy;
                break;
        }
        require(xn >= 0 && yn >= 0, "reverse_proposal: split cliques not found");
        r.cx = xn;
        r.cy = yn;
        r.anchor = find_link_between(j_new, xn, yn);
        require(r.anchor >= 0, "reverse_proposal: separator link not found");
    }
    return r;
}

}  // namespace

MoveProposal reverse_proposal_of(const JunctionTree& j_old, const JunctionTree& j_new,
                                 const MoveProposal& p) {
    MoveProposal r = reverse_skeleton(j_new, p);
    if (r.direction == MoveDir::disconnect && r.case_tag == MoveCase::a) {
        // restore each untouched neighbour to its original side
        for (auto& [l, to_x] : r.n0_assign) {
            const auto& ls = j_old.links_of(p.cx);
            to_x = std::find(ls.begin(), ls.end(), l) != ls.end();
        }
    }
    return r;
}

double reverse_proposal(const JunctionTree& j_new, const MoveProposal& p) {
    return proposal_probability(j_new, reverse_skeleton(j_new, p));
}

}  // namespace jts
