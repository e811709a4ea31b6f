#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>

#include "jts/oracle.hpp"
#include "jts/sampler.hpp"
#include "jts/tree_count.hpp"
#include "test_util.hpp"

using namespace jts;

namespace {

double chisq_pvalue(double stat, int dof) {
    boost::math::chi_squared dist(dof);
    return 1.0 - boost::math::cdf(dist, stat);
}

const TargetDistribution kUniformTrees{
    [](const JunctionTree&) { return 0.0; }, false, nullptr};

TargetDistribution uniform_graphs_target() {
    TargetDistribution t;
    t.log_graph_score = [](const JunctionTree&) { return 0.0; };
    t.mu_correction = true;
    return t;
}

}  // namespace

TEST_CASE("two-stage acceptance values") {
    Rng rng(99);
    for (int i = 0; i < 200; ++i) CHECK(two_stage_accept(0.5, 0.0, rng));

    // log ratios log(0.5), log(0.5): accept probability 1/4 instead of 1/2
    const double l = std::log(0.5);
    int acc = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) acc += two_stage_accept(l, l, rng) ? 1 : 0;
    CHECK(std::abs(acc / double(n) - 0.25) < 0.01);

    // short-circuit: the expensive ratio is not evaluated when the q test fails
    int evals = 0;
    auto pi = [&]() {
        ++evals;
        return 0.0;
    };
    for (int i = 0; i < 1000; ++i)
        two_stage_accept(std::function<double()>(pi), std::log(1e-300), rng);
    CHECK(evals == 0);
}

TEST_CASE("two-state chain on two vertices") {
    // edgeless <-> complete; under a flat target every proposed move is
    // accepted and each direction is tried with probability 1/2
    ChainOptions opts;
    opts.sweeps = 40000;
    opts.seed = 17;
    opts.thin = 1;
    int edgeless = 0, complete = 0, accepted = 0;
    ChainHooks hooks;
    hooks.on_sweep = [&](const JunctionTree& j, std::int64_t, bool acc) {
        (j.num_nodes() == 2 ? edgeless : complete) += 1;
        accepted += acc ? 1 : 0;
    };
    run_chain(build_junction_tree(Graph(2)), kUniformTrees, opts, hooks);
    CHECK(std::abs(edgeless / 40000.0 - 0.5) < 0.02);
    CHECK(std::abs(complete / 40000.0 - 0.5) < 0.02);
    CHECK(std::abs(accepted / 40000.0 - 0.5) < 0.02);
}

TEST_CASE("proposal-level rejection leaves the state untouched") {
    JunctionTree j(1);
    j.add_node(VertexSet{0});
    Rng rng(3);
    ChainOptions opts;
    for (int i = 0; i < 100; ++i) {
        auto [next, acc] = mh_step(j, kUniformTrees, opts, rng);
        CHECK(!acc);
        CHECK(next.same_tree(j));
    }
}

TEST_CASE("run_chain cadences and empty runs") {
    ChainOptions opts;
    opts.sweeps = 0;
    opts.thin = 1;
    auto res = run_chain(build_junction_tree(Graph(3)), kUniformTrees, opts);
    CHECK(res.trace.empty());
    CHECK(res.final_tree.num_nodes() == 3);

    opts.sweeps = 12;
    opts.thin = 3;
    opts.param_update_every = 4;
    opts.randomize_tree_every = 5;
    int updates = 0;
    ChainHooks hooks;
    hooks.param_update = [&](const JunctionTree&, Rng&) { ++updates; };
    hooks.extra_values = [&]() { return std::vector<double>{double(updates)}; };
    res = run_chain(build_junction_tree(Graph(3)), kUniformTrees, opts, hooks);
    CHECK(updates == 3);
    REQUIRE(res.trace.size() == 4);
    CHECK(res.trace[0].sweep == 3);
    CHECK(res.trace[3].sweep == 12);
    CHECK(res.trace[3].extras == std::vector<double>{3.0});

    hooks.param_update = [](const JunctionTree&, Rng&) { throw std::runtime_error("boom"); };
    CHECK_THROWS_WITH_AS(run_chain(build_junction_tree(Graph(3)), kUniformTrees, opts, hooks),
                         doctest::Contains("sweep 4"), std::runtime_error);
}

TEST_CASE("exact stationarity at v=3 for every rule, arity and target") {
    for (MoveArity arity : {MoveArity::single, MoveArity::multi}) {
        for (AcceptRule rule : {AcceptRule::standard, AcceptRule::two_stage}) {
            auto flat = oracle::transition_matrix_check(
                3, [](const JunctionTree&) { return 0.0; }, arity, rule);
            CAPTURE(int(arity));
            CAPTURE(int(rule));
            CHECK(flat.residual < 1e-12);
            CHECK(flat.max_row_error < 1e-12);
            CHECK(flat.peskun_violation <= 1e-15);

            auto inv_mu = oracle::transition_matrix_check(
                3, [](const JunctionTree& j) { return -log_count_junction_trees(j); }, arity,
                rule);
            CHECK(inv_mu.residual < 1e-12);
        }
    }
}

TEST_CASE("exact stationarity at v=4, standard and two-stage") {
    auto r1 = oracle::transition_matrix_check(
        4, [](const JunctionTree&) { return 0.0; }, MoveArity::single, AcceptRule::standard);
    CHECK(r1.residual < 1e-12);
    auto r2 = oracle::transition_matrix_check(
        4, [](const JunctionTree& j) { return -log_count_junction_trees(j); },
        MoveArity::multi, AcceptRule::two_stage);
    CHECK(r2.residual < 1e-12);
    auto r3 = oracle::transition_matrix_check(
        4, [](const JunctionTree& j) { return -log_count_junction_trees(j); },
        MoveArity::single, AcceptRule::standard);
    CHECK(r3.residual < 1e-12);
}

TEST_CASE("tree randomization preserves any target that depends on G alone") {
    auto states = oracle::all_junction_trees(3);
    const int n = static_cast<int>(states.size());
    // pi(J) proportional to f(G)/mu(G) with an arbitrary f
    std::vector<double> pi(n);
    double z = 0;
    for (int i = 0; i < n; ++i) {
        double f = std::exp(-0.7 * double(states[i].num_graph_edges()));
        pi[i] = f / count_junction_trees(states[i]).convert_to<double>();
        z += pi[i];
    }
    for (auto& x : pi) x /= z;

    std::unordered_map<std::string, int> index;
    for (int i = 0; i < n; ++i) index.emplace(states[i].canonical_key(), i);
    std::vector<double> flow(n, 0.0);
    for (int i = 0; i < n; ++i) {
        auto equivalents = oracle::brute_force_junction_trees(graph_of(states[i]));
        for (const auto& e : equivalents)
            flow[index.at(e.canonical_key())] += pi[i] / double(equivalents.size());
    }
    for (int i = 0; i < n; ++i) CHECK(std::abs(flow[i] - pi[i]) < 1e-14);
}

TEST_CASE("small-scale sampling matches exact enumeration at v=4") {
    // counted samples are thinned so the chi-square independence
    // assumption approximately holds
    const int gap = 25;

    // uniform over junction trees
    auto states = oracle::all_junction_trees(4);
    std::map<std::string, int> tree_freq;
    std::int64_t tree_samples = 0;
    ChainOptions opts;
    opts.sweeps = 500000;
    opts.seed = 2024;
    opts.randomize_tree_every = 50;
    ChainHooks hooks;
    hooks.on_sweep = [&](const JunctionTree& j, std::int64_t sweep, bool) {
        if (sweep % gap) return;
        ++tree_freq[j.canonical_key()];
        ++tree_samples;
    };
    run_chain(build_junction_tree(Graph(4)), kUniformTrees, opts, hooks);
    REQUIRE(tree_freq.size() == states.size());
    double stat = 0.0;
    const double expect = tree_samples / double(states.size());
    for (const auto& [key, cnt] : tree_freq) stat += (cnt - expect) * (cnt - expect) / expect;
    CHECK(chisq_pvalue(stat, static_cast<int>(states.size()) - 1) > 0.001);

    // 1/mu correction: uniform over the 61 decomposable graphs
    std::map<std::string, int> graph_freq;
    std::int64_t graph_samples = 0;
    hooks.on_sweep = [&](const JunctionTree& j, std::int64_t sweep, bool) {
        if (sweep % gap) return;
        ++graph_freq[oracle::clique_list_key(j)];
        ++graph_samples;
    };
    opts.seed = 2025;
    run_chain(build_junction_tree(Graph(4)), uniform_graphs_target(), opts, hooks);
    REQUIRE(graph_freq.size() == 61);
    stat = 0.0;
    const double ge = graph_samples / 61.0;
    for (const auto& [key, cnt] : graph_freq) stat += (cnt - ge) * (cnt - ge) / ge;
    CHECK(chisq_pvalue(stat, 60) > 0.001);
}

TEST_CASE("annealing with unit temperature and no cooling is plain sampling") {
    auto loglik = [](const JunctionTree& j) { return 0.3 * double(j.num_graph_edges()); };

    AnnealOptions aopts;
    aopts.cooling_factor = 1.0;
    aopts.penalty_per_edge = 0.2;
    aopts.initial_temperature = 1.0;
    ChainOptions opts;
    opts.sweeps = 5000;
    opts.seed = 31;
    Rng rng(opts.seed);
    auto ares = anneal(build_junction_tree(Graph(5)), loglik, nullptr, aopts, opts, rng);

    TargetDistribution t;
    t.log_graph_score = [&](const JunctionTree& j) {
        return loglik(j) - 0.2 * double(j.num_graph_edges());
    };
    auto cres = run_chain(build_junction_tree(Graph(5)), t, opts);
    CHECK(ares.final_tree.same_tree(cres.final_tree));

    // monotone temperature trace under cooling
    aopts.cooling_factor = 0.999;
    Rng rng2(5);
    opts.thin = 100;
    auto cooled = anneal(build_junction_tree(Graph(5)), loglik, nullptr, aopts, opts, rng2);
    for (std::size_t i = 1; i < cooled.trace.size(); ++i)
        CHECK(cooled.trace[i].extras[0] < cooled.trace[i - 1].extras[0]);
    // the best score is at least the score of every traced state
    for (const auto& row : cooled.trace) CHECK(ares.best_score >= row.log_target - 1e-9);
}

TEST_CASE("penalized annealing finds the complete graph when edges pay") {
    // likelihood 1.0 per edge, penalty 0.2: optimum is the complete graph
    auto loglik = [](const JunctionTree& j) { return 1.0 * double(j.num_graph_edges()); };
    AnnealOptions aopts;
    aopts.cooling_factor = 0.999;
    aopts.penalty_per_edge = 0.2;
    ChainOptions opts;
    opts.sweeps = 20000;
    opts.seed = 8;
    Rng rng(opts.seed);
    auto res = anneal(build_junction_tree(Graph(6)), loglik, nullptr, aopts, opts, rng);
    CHECK(res.best_tree.num_graph_edges() == 15);
    CHECK(res.best_score == doctest::Approx(15 * 0.8));
}

TEST_CASE("irreducibility path reaches the one-clique tree") {
    CHECK(irreducibility_path(build_junction_tree(testutil::seven_b())).size() ==
          21 - testutil::seven_b().num_edges());

    Graph k3(3);
    k3.add_edge(0, 1);
    k3.add_edge(0, 2);
    k3.add_edge(1, 2);
    CHECK(irreducibility_path(build_junction_tree(k3)).empty());

    auto path = irreducibility_path(build_junction_tree(Graph(3)));
    CHECK(path.size() == 3);

    // replay: every step is a valid decomposability-preserving connect
    JunctionTree j = build_junction_tree(testutil::seven_a());
    auto steps = irreducibility_path(j);
    CHECK(steps.size() == 21 - testutil::seven_a().num_edges());
    for (const auto& p : steps) {
        j = apply_connect(j, p);
        REQUIRE(is_decomposable(graph_of(j)));
    }
    CHECK(j.num_nodes() == 1);
    CHECK(j.clique(j.active_nodes()[0]).size() == 7);
}
