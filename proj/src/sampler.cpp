#include "jts/sampler.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace jts {

ChainState::ChainState(JunctionTree j, const TargetDistribution& t) : tree(std::move(j)) {
    log_score = t.log_graph_score ? t.log_graph_score(tree) : 0.0;
    mu = t.mu_correction ? count_junction_trees(tree) : BigInt(1);
}

bool two_stage_accept(double log_pi_ratio, double log_q_ratio, Rng& rng) {
    if (std::log(rng.uniform()) >= std::min(0.0, log_q_ratio)) return false;
    return std::log(rng.uniform()) < std::min(0.0, log_pi_ratio);
}

bool two_stage_accept(const std::function<double()>& log_pi_ratio, double log_q_ratio,
                      Rng& rng) {
    if (std::log(rng.uniform()) >= std::min(0.0, log_q_ratio)) return false;
    return std::log(rng.uniform()) < std::min(0.0, log_pi_ratio());
}

bool mh_step_state(ChainState& s, const TargetDistribution& t, AcceptRule rule,
                   MoveArity arity, Rng& rng) {
    const bool do_connect = rng.coin();
    auto p = do_connect ? propose_connect(s.tree, arity, rng)
                        : propose_disconnect(s.tree, arity, rng);
    if (!p) return false;
    const double log_q_ratio = p->log_q_reverse - p->log_q_forward;

    // the q test is free here, so the two-stage rule runs it first and
    // skips the score and μ work on failure
    if (rule == AcceptRule::two_stage &&
        std::log(rng.uniform()) >= std::min(0.0, log_q_ratio))
        return false;

    JunctionTree next = apply_move(s.tree, *p);
    double dscore = 0.0;
    if (t.log_score_delta)
        dscore = t.log_score_delta(s.tree, *p);
    else if (t.log_graph_score)
        dscore = t.log_graph_score(next) - s.log_score;

    BigInt mu_next = s.mu;
    double dmu = 0.0;
    if (t.mu_correction) {
        mu_next = count_junction_trees(next);
        dmu = -log_big_ratio(mu_next, s.mu);
    }
    const double log_pi_ratio = (dscore + dmu) / s.temperature;

    bool accept;
    if (rule == AcceptRule::two_stage)
        accept = std::log(rng.uniform()) < std::min(0.0, log_pi_ratio);
    else
        accept = std::log(rng.uniform()) < std::min(0.0, log_pi_ratio + log_q_ratio);

    if (accept) {
        s.tree = std::move(next);
        s.log_score += dscore;
        s.mu = std::move(mu_next);
    }
    return accept;
}

std::pair<JunctionTree, bool> mh_step(const JunctionTree& j, const TargetDistribution& t,
                                      const ChainOptions& opts, Rng& rng) {
    ChainState s(j, t);
    const bool acc = mh_step_state(s, t, opts.rule, opts.arity, rng);
    return {std::move(s.tree), acc};
}

namespace {

TraceRow make_row(const ChainState& s, const TargetDistribution& t, std::int64_t sweep,
                  bool accepted) {
    TraceRow row;
    row.sweep = sweep;
    row.log_target = s.log_score - (t.mu_correction ? log_big(s.mu) : 0.0);
    row.n_edges = s.tree.num_graph_edges();
    row.n_cliques = s.tree.num_nodes();
    row.accepted = accepted;
    return row;
}

}  // namespace

RunResult run_chain(const JunctionTree& j0, const TargetDistribution& t,
                    const ChainOptions& opts, const ChainHooks& hooks) {
    Rng rng(opts.seed);
    ChainState s(j0, t);
    RunResult res;
    res.sweeps = opts.sweeps;

    for (std::int64_t sweep = 1; sweep <= opts.sweeps; ++sweep) {
        const bool acc = mh_step_state(s, t, opts.rule, opts.arity, rng);
        if (acc) ++res.accepted;

        if (hooks.param_update && sweep % opts.param_update_every == 0) {
            try {
                hooks.param_update(s.tree, rng);
            } catch (const std::exception& e) {
                throw std::runtime_error("parameter update hook failed at sweep " +
                                         std::to_string(sweep) + ": " + e.what());
            }
            // the hook may have moved the target
            s.log_score = t.log_graph_score ? t.log_graph_score(s.tree) : 0.0;
        }
        if (sweep % opts.randomize_tree_every == 0) rerandomize_links(s.tree, rng);
        if (hooks.on_sweep) hooks.on_sweep(s.tree, sweep, acc);

        if (sweep % opts.thin == 0) {
            TraceRow row = make_row(s, t, sweep, acc);
            if (hooks.extra_values) row.extras = hooks.extra_values();
            res.trace.push_back(std::move(row));
        }
    }
    res.final_tree = std::move(s.tree);
    return res;
}

AnnealResult anneal(const JunctionTree& j0,
                    const std::function<double(const JunctionTree&)>& log_likelihood,
                    const std::function<double(const JunctionTree&, const MoveProposal&)>& delta,
                    const AnnealOptions& a_opts, const ChainOptions& opts, Rng& rng) {
    if (!(a_opts.cooling_factor > 0.0) || a_opts.cooling_factor > 1.0)
        throw std::invalid_argument("anneal: cooling factor must lie in (0, 1]");

    TargetDistribution t;
    const double penalty = a_opts.penalty_per_edge;
    t.log_graph_score = [&log_likelihood, penalty](const JunctionTree& j) {
        return log_likelihood(j) - penalty * double(j.num_graph_edges());
    };
    if (delta) {
        t.log_score_delta = [&delta, penalty](const JunctionTree& j, const MoveProposal& p) {
            return delta(j, p) - penalty * double(edge_delta(p));
        };
    }
    t.mu_correction = false;  // optimization over graphs

    ChainState s(j0, t);
    s.temperature = a_opts.initial_temperature;

    AnnealResult res;
    res.best_tree = s.tree;
    res.best_score = s.log_score;

    for (std::int64_t sweep = 1; sweep <= opts.sweeps; ++sweep) {
        mh_step_state(s, t, opts.rule, opts.arity, rng);
        if (s.log_score > res.best_score) {
            res.best_score = s.log_score;
            res.best_tree = s.tree;
        }
        s.temperature *= a_opts.cooling_factor;
        if (sweep % opts.randomize_tree_every == 0) rerandomize_links(s.tree, rng);
        if ((sweep & 0x3ffff) == 0)  // shed incremental-score drift
            s.log_score = t.log_graph_score(s.tree);
        if (sweep % opts.thin == 0) {
            TraceRow row = make_row(s, t, sweep, false);
            row.extras = {s.temperature};
            res.trace.push_back(std::move(row));
        }
    }
    res.final_tree = std::move(s.tree);
    return res;
}

std::vector<MoveProposal> irreducibility_path(JunctionTree j) {
    std::vector<MoveProposal> path;
    while (j.num_links() > 0) {
        const int link = j.active_links().front();
        MoveProposal p;
        p.direction = MoveDir::connect;
        p.arity = MoveArity::single;
        p.anchor = link;
        p.cx = j.link_a(link);
        p.cy = j.link_b(link);
        p.S = j.separator(link);
        VertexSet ax = j.clique(p.cx).set_difference(p.S);
        VertexSet ay = j.clique(p.cy).set_difference(p.S);
        p.X = VertexSet::singleton(ax.min());
        p.Y = VertexSet::singleton(ay.min());
        if (p.Y.min() < p.X.min()) {
            std::swap(p.X, p.Y);
            std::swap(p.cx, p.cy);
            std::swap(ax, ay);
        }
        const bool x_exact = p.X.size() == ax.size();
        const bool y_exact = p.Y.size() == ay.size();
        p.case_tag = x_exact ? (y_exact ? MoveCase::a : MoveCase::c)
                             : (y_exact ? MoveCase::b : MoveCase::d);
        p.log_q_forward = proposal_probability(j, p);
        JunctionTree next = apply_connect(j, p);
        p.log_q_reverse = reverse_proposal(next, p);
        path.push_back(p);
        j = std::move(next);
    }
    return path;
}

}  // namespace jts
