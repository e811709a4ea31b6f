#include "jts/experiments.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "jts/profile_score.hpp"
#include "jts/tree_count.hpp"

namespace jts::experiments {

Graph second_order_chain(int v) {
    Graph g(v);
    for (int i = 0; i + 1 < v; ++i) g.add_edge(i, i + 1);
    for (int i = 0; i + 2 < v; ++i) g.add_edge(i, i + 2);
    return g;
}

double chisq_pvalue(double stat, int dof) {
    if (dof < 1) return 1.0;
    boost::math::chi_squared dist(dof);
    return 1.0 - boost::math::cdf(dist, stat);
}

SampleResult run_sample_experiment(const oracle::GraphTable& table, const SampleConfig& cfg) {
    const int v = table.num_vertices();

    TargetDistribution t;
    t.log_graph_score = [](const JunctionTree&) { return 0.0; };
    t.mu_correction = cfg.mu_correction;

    ChainOptions opts;
    opts.sweeps = cfg.sweeps;
    opts.seed = cfg.seed;
    opts.arity = cfg.arity;
    opts.rule = cfg.rule;
    opts.randomize_tree_every = cfg.randomize_every;
    opts.thin = cfg.sweeps + 1;  // no trace rows needed

    std::unordered_map<std::string, std::int64_t> counts;
    std::int64_t samples = 0;
    ChainHooks hooks;
    hooks.on_sweep = [&](const JunctionTree& j, std::int64_t sweep, bool) {
        if (sweep % cfg.count_gap) return;
        ++counts[oracle::clique_list_key(j)];
        ++samples;
    };

    // start at the trivial graph with a uniformly chosen representation
    JunctionTree j0 = build_junction_tree(Graph(v));
    Rng warm(cfg.seed ^ 0x9e3779b97f4a7c15ull);
    rerandomize_links(j0, warm);

    RunResult run = run_chain(j0, t, opts, hooks);

    SampleResult res;
    res.samples = samples;
    res.accepted = run.accepted;
    res.sweeps = cfg.sweeps;

    // expected mass per graph: μ-proportional without the correction,
    // uniform with it
    const auto order = table.order_by_mu_desc();
    const double total_mu = table.total_mu().convert_to<double>();
    std::vector<double> expected(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& row = table.rows()[order[k]];
        expected[k] = cfg.mu_correction ? 1.0 / double(table.size())
                                        : row.mu.convert_to<double>() / total_mu;
    }
    // counts are keyed by clique list; rebuild the key per table row
    std::vector<std::int64_t> observed(order.size(), 0);
    for (std::size_t k = 0; k < order.size(); ++k) {
        Graph g = Graph::from_edge_mask(v, table.rows()[order[k]].edge_mask);
        auto it = counts.find(oracle::clique_list_key(g));
        if (it != counts.end()) observed[k] = it->second;
    }

    res.cdf.resize(order.size());
    double ce = 0.0, co = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        ce += expected[k];
        co += double(observed[k]) / double(samples);
        res.cdf[k] = {ce, co};
    }

    // chi-square over bins of consecutive graphs in the μ-descending
    // order, each with enough expected mass; a thin tail bin is merged
    // into its predecessor
    std::vector<std::pair<double, std::int64_t>> binned;
    double be = 0.0;
    std::int64_t bo = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        be += expected[k] * samples;
        bo += observed[k];
        if (be >= double(cfg.min_expected_per_bin) || k + 1 == order.size()) {
            binned.emplace_back(be, bo);
            be = 0.0;
            bo = 0;
        }
    }
    if (binned.size() >= 2 && binned.back().first < double(cfg.min_expected_per_bin)) {
        binned[binned.size() - 2].first += binned.back().first;
        binned[binned.size() - 2].second += binned.back().second;
        binned.pop_back();
    }
    double stat = 0.0;
    for (auto [e, o] : binned) stat += (o - e) * (o - e) / e;
    res.chi_square = stat;
    res.bins = static_cast<int>(binned.size());
    res.p_value = chisq_pvalue(stat, res.bins - 1);
    return res;
}

FitResult run_fit(const ggim::Dataset& data, const FitConfig& cfg) {
    const int v = data.v();
    ggim::GgimParams params{cfg.sigma2_init, cfg.rho_init, v};
    params.check();
    ggim::StatsCache cache(data);

    TargetDistribution t;
    t.mu_correction = cfg.mu_correction;
    t.log_graph_score = [&](const JunctionTree& j) {
        return ggim::joint_log_density(data, j, params, cache) +
               ggim::log_graph_prior(j, cfg.prior);
    };
    t.log_score_delta = [&](const JunctionTree& j, const MoveProposal& p) {
        const double sign = p.direction == MoveDir::connect ? 1.0 : -1.0;
        double d = sign * ggim::log_cross_ratio(p.X, p.Y, p.S, data, params, cache);
        if (cfg.prior.graph_prior == ggim::GraphPrior::per_edge_penalty)
            d -= cfg.prior.edge_penalty * double(edge_delta(p));
        return d;
    };

    FitResult res;
    res.edge_marginals = Eigen::MatrixXd::Zero(v, v);
    const std::int64_t half = cfg.chain.sweeps / 2;
    std::int64_t marginal_samples = 0;
    std::int64_t param_sweep = 0, param_events_late = 0;
    double sigma2_acc = 0.0, rho_acc = 0.0;
    auto half_mark = std::chrono::steady_clock::now();

    ChainHooks hooks;
    hooks.param_update = [&](const JunctionTree& j, Rng& rng) {
        params.sigma2 =
            ggim::gibbs_update_sigma2(data, j, params.rho, cfg.prior, cache, rng);
        params.rho = ggim::mh_update_rho(data, j, params.sigma2, params.rho, cfg.rho_step,
                                         cache, rng);
        param_sweep += cfg.chain.param_update_every;
        if (param_sweep > half) {
            sigma2_acc += params.sigma2;
            rho_acc += params.rho;
            ++param_events_late;
        }
    };
    hooks.extra_values = [&]() { return std::vector<double>{params.sigma2, params.rho}; };
    hooks.on_sweep = [&](const JunctionTree& j, std::int64_t sweep, bool) {
        if (sweep == half) half_mark = std::chrono::steady_clock::now();
        if (sweep <= half || sweep % cfg.marginal_gap) return;
        Graph g = graph_of(j);
        for (auto [a, b] : g.edge_list()) {
            res.edge_marginals(a, b) += 1.0;
            res.edge_marginals(b, a) += 1.0;
        }
        ++marginal_samples;
    };

    RunResult run = run_chain(build_junction_tree(Graph(v)), t, cfg.chain, hooks);
    if (marginal_samples > 0) res.edge_marginals /= double(marginal_samples);

    res.second_half_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - half_mark).count();
    res.seconds_per_sweep = cfg.chain.sweeps > half
                                ? res.second_half_seconds / double(cfg.chain.sweeps - half)
                                : 0.0;
    if (param_events_late > 0) {
        res.sigma2_mean = sigma2_acc / double(param_events_late);
        res.rho_mean = rho_acc / double(param_events_late);
    }
    res.trace = std::move(run.trace);
    res.final_tree = std::move(run.final_tree);
    res.accepted = run.accepted;
    res.cache_entries = cache.size();
    return res;
}

AnnealBatchResult run_anneal_batch(const Eigen::MatrixXd& data_rows, const Graph* reference,
                                   const AnnealConfig& cfg) {
    ProfileScore score(data_rows);
    const int v = score.v();

    AnnealBatchResult res;
    res.penalty = std::log((double(v) - 1.0) / cfg.degree - 1.0);
    if (reference) {
        res.have_reference = true;
        res.reference_score =
            score.score_graph(*reference) - res.penalty * double(reference->num_edges());
    }

    AnnealOptions aopts;
    aopts.cooling_factor = cfg.cooling;
    aopts.penalty_per_edge = res.penalty;
    aopts.initial_temperature = cfg.initial_temperature;

    ChainOptions opts;
    opts.sweeps = cfg.sweeps;
    opts.arity = cfg.arity;
    opts.rule = cfg.rule;
    opts.randomize_tree_every = cfg.randomize_every;
    opts.thin = std::max<std::int64_t>(cfg.sweeps / 100, 1);

    auto loglik = [&](const JunctionTree& j) { return score(j); };
    auto delta = [&](const JunctionTree& j, const MoveProposal& p) {
        return score.delta(j, p);
    };

    double best = -1e300;
    for (int rep = 0; rep < cfg.replicates; ++rep) {
        Rng rng(cfg.seed + std::uint64_t(rep));
        auto out = anneal(build_junction_tree(Graph(v)), loglik, delta, aopts, opts, rng);
        AnnealReplicate r;
        r.seed = cfg.seed + std::uint64_t(rep);
        r.best_score = out.best_score;
        r.final_score = out.trace.empty() ? out.best_score : out.trace.back().log_target;
        r.reached_reference =
            res.have_reference && out.best_score >= res.reference_score - 1e-6;
        if (r.reached_reference) ++res.reached;
        if (out.best_score > best) {
            best = out.best_score;
            res.best_graph = graph_of(out.best_tree);
        }
        res.replicates.push_back(r);
    }
    res.best_score = best;
    return res;
}

VerifyReport run_verify(bool quick, const std::function<BigInt(const JunctionTree&)>& mu_fn) {
    VerifyReport rep;
    auto mu = mu_fn ? mu_fn : [](const JunctionTree& j) { return count_junction_trees(j); };

    {  // exact enumeration constants
        VerifyCheck c{"enumeration v=7 constants", false, ""};
        auto table = oracle::enumerate_decomposable(7);
        JunctionTree trivial = build_junction_tree(Graph(7));
        const BigInt mu_trivial = mu(trivial);
        std::ostringstream os;
        os << "scanned " << table.graphs_scanned() << ", decomposable " << table.size()
           << ", mu=1 count " << table.count_with_mu_one() << ", trivial mu " << mu_trivial;
        c.detail = os.str();
        c.pass = table.graphs_scanned() == 2097152 && table.size() == 617675 &&
                 table.count_with_mu_one() == 187447 && mu_trivial == 16807;
        rep.checks.push_back(std::move(c));
    }

    {  // junction tree count against brute-force enumeration
        VerifyCheck c{"count equals brute-force tree enumeration", false, ""};
        bool ok = true;
        std::int64_t tested = 0;
        const int vmax = quick ? 5 : 6;
        for (int v = 2; v <= vmax && ok; ++v) {
            const std::uint64_t total = std::uint64_t{1} << (v * (v - 1) / 2);
            for (std::uint64_t mask = 0; mask < total; ++mask) {
                Graph g = Graph::from_edge_mask(v, mask);
                if (!is_decomposable(g)) continue;
                JunctionTree j = build_junction_tree(g);
                if (mu(j) != BigInt(oracle::brute_force_junction_trees(g).size())) {
                    ok = false;
                    break;
                }
                ++tested;
            }
        }
        // seeded random 7-vertex graphs
        Rng rng(20130831);
        const int want7 = quick ? 50 : 200;
        for (int k = 0; k < want7 && ok; ++k) {
            std::uint64_t mask =
                (std::uint64_t(rng.engine()()) & ((std::uint64_t{1} << 21) - 1));
            Graph g = Graph::from_edge_mask(7, mask);
            if (!is_decomposable(g)) continue;
            JunctionTree j = build_junction_tree(g);
            if (mu(j) != BigInt(oracle::brute_force_junction_trees(g).size())) ok = false;
            ++tested;
        }
        c.pass = ok;
        c.detail = "graphs tested: " + std::to_string(tested);
        rep.checks.push_back(std::move(c));
    }

    {  // stationarity residuals
        VerifyCheck c{"transition-matrix stationarity", false, ""};
        double worst = 0.0;
        const int v = quick ? 3 : 4;
        for (MoveArity arity : {MoveArity::single, MoveArity::multi}) {
            for (AcceptRule rule : {AcceptRule::standard, AcceptRule::two_stage}) {
                auto flat = oracle::transition_matrix_check(
                    v, [](const JunctionTree&) { return 0.0; }, arity, rule);
                auto invmu = oracle::transition_matrix_check(
                    v, [](const JunctionTree& j) { return -log_count_junction_trees(j); },
                    arity, rule);
                worst = std::max({worst, flat.residual, invmu.residual});
            }
        }
        std::ostringstream os;
        os << "max residual " << worst << " at v=" << v;
        c.detail = os.str();
        c.pass = worst < 1e-12;
        rep.checks.push_back(std::move(c));
    }

    {  // reversible pairing spot check
        VerifyCheck c{"reverse moves reconstruct the tree", false, ""};
        bool ok = true;
        Rng rng(5150);
        JunctionTree j = build_junction_tree(Graph(8));
        int applied = 0;
        for (int step = 0; applied < (quick ? 2000 : 20000) && step < 500000 && ok; ++step) {
            auto p = rng.coin() ? propose_connect(j, MoveArity::multi, rng)
                                : propose_disconnect(j, MoveArity::multi, rng);
            if (!p) continue;
            JunctionTree j2 = apply_move(j, *p);
            MoveProposal r = reverse_proposal_of(j, j2, *p);
            if (!apply_move(j2, r).same_tree(j)) ok = false;
            j = std::move(j2);
            ++applied;
        }
        c.pass = ok && applied >= (quick ? 2000 : 20000);
        c.detail = "moves checked: " + std::to_string(applied);
        rep.checks.push_back(std::move(c));
    }

    return rep;
}

}  // namespace jts::experiments
