// Command-line driver: sampling, posterior fitting, data simulation,
// simulated annealing and the oracle verification suite, all seeded and
// reproducible.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "jts/experiments.hpp"
#include "jts/ggim.hpp"
#include "jts/io.hpp"
#include "jts/oracle.hpp"
#include "jts/profile_score.hpp"
#include "jts/tree_count.hpp"

namespace fs = std::filesystem;
using namespace jts;

namespace {

constexpr const char* kVersion = "jtsampler 0.1.0";

std::string echo_args(int argc, char** argv) {
    std::ostringstream os;
    for (int i = 0; i < argc; ++i) os << (i ? " " : "") << argv[i];
    return os.str();
}

std::vector<std::string> metadata(const std::string& cmdline, std::uint64_t seed) {
    return {kVersion, "command: " + cmdline, "seed: " + std::to_string(seed)};
}

std::string out_path(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    return (fs::path(dir) / name).string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Markov chain sampling of decomposable graphs on junction trees"};
    app.require_subcommand(1);
    const std::string cmdline = echo_args(argc, argv);

    std::map<std::string, MoveArity> arity_map{{"single", MoveArity::single},
                                               {"multi", MoveArity::multi}};
    std::map<std::string, AcceptRule> rule_map{{"standard", AcceptRule::standard},
                                               {"two-stage", AcceptRule::two_stage}};
    std::map<std::string, bool> onoff{{"on", true}, {"off", false}};

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run the oracle verification suite");
    bool quick = false;
    verify->add_flag("--quick", quick, "trimmed sweep sizes");

    // ---- count-jt ----
    auto* countjt = app.add_subcommand("count-jt", "count the junction trees of a graph");
    std::string graph_file;
    bool dump_tree = false;
    countjt->add_option("--graph", graph_file, "edge-list graph file")->required();
    countjt->add_flag("--dump", dump_tree, "print a junction tree of the graph");

    // ---- sample ----
    auto* sample = app.add_subcommand(
        "sample", "sample junction trees; with v<=7, compare against exact enumeration");
    struct {
        int v = 7;
        std::int64_t sweeps = 1000000;
        std::uint64_t seed = 1;
        MoveArity arity = MoveArity::single;
        AcceptRule rule = AcceptRule::standard;
        bool mu_correction = false;
        std::int64_t count_gap = 100;
        std::int64_t randomize_every = 1000;
        std::int64_t thin = 100;
        std::string out = "out";
    } smp;
    sample->add_option("--v", smp.v, "vertex count");
    sample->add_option("--sweeps", smp.sweeps);
    sample->add_option("--seed", smp.seed);
    sample->add_option("--arity", smp.arity)
        ->transform(CLI::CheckedTransformer(arity_map, CLI::ignore_case));
    sample->add_option("--rule", smp.rule)
        ->transform(CLI::CheckedTransformer(rule_map, CLI::ignore_case));
    sample->add_option("--mu-correction", smp.mu_correction, "on: sample graphs uniformly")
        ->transform(CLI::CheckedTransformer(onoff, CLI::ignore_case));
    sample->add_option("--count-gap", smp.count_gap, "spacing of counted states");
    sample->add_option("--randomize-every", smp.randomize_every);
    sample->add_option("--thin", smp.thin);
    sample->add_option("--out", smp.out, "output directory");

    // ---- simulate ----
    auto* simulate = app.add_subcommand("simulate", "draw data from the intra-class model");
    struct {
        std::string graph, out = "out";
        long n = 1000;
        double sigma2 = 30.0, rho = 0.2;
        std::uint64_t seed = 1;
    } sim;
    simulate->add_option("--graph", sim.graph, "edge-list graph file")->required();
    simulate->add_option("--n", sim.n, "replicates");
    simulate->add_option("--sigma2", sim.sigma2);
    simulate->add_option("--rho", sim.rho);
    simulate->add_option("--seed", sim.seed);
    simulate->add_option("--out", sim.out, "output directory");

    // ---- fit ----
    auto* fit = app.add_subcommand("fit", "sample the joint posterior of graph, sigma2, rho");
    struct {
        std::string data, out = "out";
        std::int64_t sweeps = 1000000, thin = 100;
        std::int64_t param_every = 1000, randomize_every = 1000, marginal_gap = 100;
        std::uint64_t seed = 1;
        MoveArity arity = MoveArity::single;
        AcceptRule rule = AcceptRule::standard;
        bool mu_correction = true;
        double alpha = 1.0, beta = 1.0, rho_step = 0.5, penalty = 0.0;
    } ft;
    fit->add_option("--data", ft.data, "CSV data file, one replicate per row")->required();
    fit->add_option("--sweeps", ft.sweeps);
    fit->add_option("--thin", ft.thin);
    fit->add_option("--seed", ft.seed);
    fit->add_option("--arity", ft.arity)
        ->transform(CLI::CheckedTransformer(arity_map, CLI::ignore_case));
    fit->add_option("--rule", ft.rule)
        ->transform(CLI::CheckedTransformer(rule_map, CLI::ignore_case));
    fit->add_option("--mu-correction", ft.mu_correction)
        ->transform(CLI::CheckedTransformer(onoff, CLI::ignore_case));
    fit->add_option("--alpha", ft.alpha, "Gamma shape for the precision prior");
    fit->add_option("--beta", ft.beta, "Gamma rate for the precision prior");
    fit->add_option("--rho-step", ft.rho_step, "random-walk scale for rho");
    fit->add_option("--penalty", ft.penalty, "per-edge graph prior penalty (0: uniform)");
    fit->add_option("--param-every", ft.param_every);
    fit->add_option("--randomize-every", ft.randomize_every);
    fit->add_option("--marginal-gap", ft.marginal_gap);
    fit->add_option("--out", ft.out, "output directory");

    // ---- anneal ----
    auto* anneal_cmd = app.add_subcommand(
        "anneal", "search for the maximum penalized profile likelihood graph");
    struct {
        std::string data, reference, out = "out";
        std::int64_t sweeps = 3000000;
        int replicates = 1;
        double d = 1.0, cooling = 0.999999;
        std::uint64_t seed = 1;
        MoveArity arity = MoveArity::single;
        std::int64_t randomize_every = 1000;
    } an;
    anneal_cmd->add_option("--data", an.data, "CSV data file")->required();
    anneal_cmd->add_option("--d", an.d, "expected average degree in the penalty");
    anneal_cmd->add_option("--cooling", an.cooling, "geometric cooling factor");
    anneal_cmd->add_option("--sweeps", an.sweeps);
    anneal_cmd->add_option("--replicates", an.replicates);
    anneal_cmd->add_option("--seed", an.seed);
    anneal_cmd->add_option("--arity", an.arity)
        ->transform(CLI::CheckedTransformer(arity_map, CLI::ignore_case));
    anneal_cmd->add_option("--randomize-every", an.randomize_every);
    anneal_cmd->add_option("--reference-graph", an.reference,
                           "edge-list file; replicates are scored against it");
    anneal_cmd->add_option("--out", an.out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            auto rep = experiments::run_verify(quick);
            for (const auto& c : rep.checks) {
                std::cout << (c.pass ? "PASS  " : "FAIL  ") << c.name << "  [" << c.detail
                          << "]\n";
            }
            return rep.ok() ? 0 : 1;
        }

        if (countjt->parsed()) {
            Graph g = read_edge_list_file(graph_file);
            JunctionTree j = build_junction_tree(g);
            std::cout << count_junction_trees(j) << "\n";
            if (dump_tree) std::cout << j.dump();
            return 0;
        }

        if (sample->parsed()) {
            if (smp.v <= 7) {
                experiments::SampleConfig cfg;
                cfg.sweeps = smp.sweeps;
                cfg.seed = smp.seed;
                cfg.arity = smp.arity;
                cfg.rule = smp.rule;
                cfg.mu_correction = smp.mu_correction;
                cfg.count_gap = smp.count_gap;
                cfg.randomize_every = smp.randomize_every;
                auto table = oracle::enumerate_decomposable(smp.v);
                auto res = experiments::run_sample_experiment(table, cfg);
                auto meta = metadata(cmdline, smp.seed);
                meta.push_back("mode: " + std::string(smp.mu_correction
                                                          ? "graph-uniform (pi ~ 1/mu)"
                                                          : "tree-uniform (pi ~ 1)"));
                meta.push_back("graphs: " + std::to_string(table.size()));
                meta.push_back("counted samples: " + std::to_string(res.samples));
                io::write_cdf_csv(out_path(smp.out, "cdf.csv"), res.cdf, meta);
                std::cout << "graphs " << table.size() << ", samples " << res.samples
                          << ", accepted " << res.accepted << "\n"
                          << "chi-square " << res.chi_square << " on " << res.bins - 1
                          << " dof, p = " << res.p_value << "\n"
                          << "wrote " << out_path(smp.out, "cdf.csv") << "\n";
                return 0;
            }
            // plain sampling at larger v: flat target over junction trees
            TargetDistribution t;
            t.log_graph_score = [](const JunctionTree&) { return 0.0; };
            t.mu_correction = smp.mu_correction;
            ChainOptions opts;
            opts.sweeps = smp.sweeps;
            opts.seed = smp.seed;
            opts.arity = smp.arity;
            opts.rule = smp.rule;
            opts.thin = smp.thin;
            opts.randomize_tree_every = smp.randomize_every;
            auto res = run_chain(build_junction_tree(Graph(smp.v)), t, opts);
            io::write_trace_csv(out_path(smp.out, "trace.csv"), res.trace, {},
                                metadata(cmdline, smp.seed));
            std::cout << "accepted " << res.accepted << " of " << smp.sweeps << "\n"
                      << "wrote " << out_path(smp.out, "trace.csv") << "\n";
            return 0;
        }

        if (simulate->parsed()) {
            Graph g = read_edge_list_file(sim.graph);
            JunctionTree j = build_junction_tree(g);  // NotDecomposable propagates
            ggim::GgimParams p{sim.sigma2, sim.rho, g.num_vertices()};
            Rng rng(sim.seed);
            ggim::Dataset data = ggim::simulate_data(j, p, sim.n, rng);
            auto meta = metadata(cmdline, sim.seed);
            meta.push_back("graph: " + sim.graph);
            meta.push_back("sigma2: " + std::to_string(sim.sigma2));
            meta.push_back("rho: " + std::to_string(sim.rho));
            data.write_csv(out_path(sim.out, "data.csv"), meta);
            std::cout << "wrote " << out_path(sim.out, "data.csv") << " (" << data.n() << " x "
                      << data.v() << ")\n";
            return 0;
        }

        if (fit->parsed()) {
            ggim::Dataset data = ggim::Dataset::read_csv(ft.data);
            experiments::FitConfig cfg;
            cfg.chain.sweeps = ft.sweeps;
            cfg.chain.thin = ft.thin;
            cfg.chain.param_update_every = ft.param_every;
            cfg.chain.randomize_tree_every = ft.randomize_every;
            cfg.chain.seed = ft.seed;
            cfg.chain.arity = ft.arity;
            cfg.chain.rule = ft.rule;
            cfg.mu_correction = ft.mu_correction;
            cfg.prior.alpha = ft.alpha;
            cfg.prior.beta = ft.beta;
            if (ft.penalty != 0.0) {
                cfg.prior.graph_prior = ggim::GraphPrior::per_edge_penalty;
                cfg.prior.edge_penalty = ft.penalty;
            }
            cfg.rho_step = ft.rho_step;
            cfg.marginal_gap = ft.marginal_gap;
            auto res = experiments::run_fit(data, cfg);
            auto meta = metadata(cmdline, ft.seed);
            io::write_trace_csv(out_path(ft.out, "trace.csv"), res.trace, {"sigma2", "rho"},
                                meta);
            io::write_matrix_csv(out_path(ft.out, "edge_marginals.csv"), res.edge_marginals,
                                 meta);
            std::cout << "posterior means (second half): sigma2 " << res.sigma2_mean
                      << ", rho " << res.rho_mean << "\n"
                      << "accepted " << res.accepted << " of " << ft.sweeps
                      << "; cached subsets " << res.cache_entries << "\n"
                      << "second-half sweep cost " << res.seconds_per_sweep * 1e6 << " us\n"
                      << "wrote " << out_path(ft.out, "trace.csv") << ", "
                      << out_path(ft.out, "edge_marginals.csv") << "\n";
            return 0;
        }

        if (anneal_cmd->parsed()) {
            ggim::Dataset data = ggim::Dataset::read_csv(an.data);
            experiments::AnnealConfig cfg;
            cfg.sweeps = an.sweeps;
            cfg.replicates = an.replicates;
            cfg.cooling = an.cooling;
            cfg.degree = an.d;
            cfg.seed = an.seed;
            cfg.arity = an.arity;
            cfg.randomize_every = an.randomize_every;
            Graph ref;
            const Graph* refp = nullptr;
            if (!an.reference.empty()) {
                ref = read_edge_list_file(an.reference);
                refp = &ref;
            }
            auto res = experiments::run_anneal_batch(data.rows(), refp, cfg);

            auto meta = metadata(cmdline, an.seed);
            meta.push_back("penalty alpha: " + std::to_string(res.penalty));
            if (res.have_reference)
                meta.push_back("reference score: " + std::to_string(res.reference_score));
            {
                std::ofstream out(out_path(an.out, "replicates.csv"));
                for (const auto& m : meta) out << "# " << m << "\n";
                out.precision(12);
                out << "seed,best_score,final_score,reached_reference\n";
                for (const auto& r : res.replicates)
                    out << r.seed << "," << r.best_score << "," << r.final_score << ","
                        << (r.reached_reference ? 1 : 0) << "\n";
            }
            write_edge_list_file(out_path(an.out, "best_graph.txt"), res.best_graph, meta);
            std::cout << "penalty alpha = " << res.penalty << "\n"
                      << "best penalized score " << res.best_score << "\n";
            if (res.have_reference)
                std::cout << "replicates reaching the reference score: " << res.reached
                          << " / " << cfg.replicates << "\n";
            std::cout << "wrote " << out_path(an.out, "replicates.csv") << ", "
                      << out_path(an.out, "best_graph.txt") << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
