#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jts/ggim.hpp"
#include "jts/graph.hpp"
#include "jts/oracle.hpp"
#include "jts/sampler.hpp"

namespace jts::experiments {

// (Σ^{-1})_{ij} = 0 whenever |i-j| > 2
Graph second_order_chain(int v);

double chisq_pvalue(double stat, int dof);

// ---- junction tree / graph frequency sampling ----------------------------

struct SampleConfig {
    std::int64_t sweeps = 1000000;
    std::uint64_t seed = 1;
    MoveArity arity = MoveArity::single;
    AcceptRule rule = AcceptRule::standard;
    // off: π̃ ∝ 1 (graphs weighted by their tree count); on: π̃ ∝ 1/μ
    // (uniform over decomposable graphs)
    bool mu_correction = false;
    std::int64_t randomize_every = 1000;
    // spacing of counted states; the chi-square test needs roughly
    // independent draws
    std::int64_t count_gap = 100;
    std::int64_t min_expected_per_bin = 20;
};

struct CdfPoint {
    double expected = 0.0;
    double observed = 0.0;
};

struct SampleResult {
    std::vector<CdfPoint> cdf;  // graphs ordered by μ descending
    double chi_square = 0.0;
    double p_value = 0.0;
    int bins = 0;
    std::int64_t samples = 0;
    std::int64_t accepted = 0;
    std::int64_t sweeps = 0;
};

// Samples junction trees at the table's vertex count, counts the visited
// graphs against the exact table, and compares the empirical and expected
// distributions along the μ-descending order.
SampleResult run_sample_experiment(const oracle::GraphTable& table, const SampleConfig& cfg);

// ---- posterior fitting ----------------------------------------------------

struct FitConfig {
    ChainOptions chain;
    ggim::PriorSpec prior;
    double rho_step = 0.5;
    bool mu_correction = true;
    double sigma2_init = 1.0;
    double rho_init = 0.0;
    std::int64_t marginal_gap = 100;  // edge-marginal accumulation spacing
};

struct FitResult {
    std::vector<TraceRow> trace;     // extras: sigma2, rho
    Eigen::MatrixXd edge_marginals;  // second-half edge frequencies
    double sigma2_mean = 0.0;        // second-half posterior means
    double rho_mean = 0.0;
    JunctionTree final_tree;
    std::int64_t accepted = 0;
    double second_half_seconds = 0.0;
    double seconds_per_sweep = 0.0;  // second half only, past warm-up
    std::size_t cache_entries = 0;
};

// Joint chain over (G, σ², ρ) from the edgeless start: graph moves every
// sweep, Gibbs σ² and Metropolis ρ at the parameter cadence, junction
// tree randomization at its own cadence.
FitResult run_fit(const ggim::Dataset& data, const FitConfig& cfg);

// ---- simulated annealing ---------------------------------------------------

struct AnnealConfig {
    std::int64_t sweeps = 3000000;
    int replicates = 50;
    double cooling = 0.999999;
    double degree = 1.0;  // d in the penalty α = log({v-1}/d - 1)
    double initial_temperature = 1.0;
    std::uint64_t seed = 1;
    MoveArity arity = MoveArity::single;
    AcceptRule rule = AcceptRule::standard;
    std::int64_t randomize_every = 1000;
};

struct AnnealReplicate {
    std::uint64_t seed = 0;
    double best_score = 0.0;
    double final_score = 0.0;
    bool reached_reference = false;
};

struct AnnealBatchResult {
    double penalty = 0.0;           // α
    double reference_score = 0.0;   // penalized score of the reference graph
    bool have_reference = false;
    std::vector<AnnealReplicate> replicates;
    Graph best_graph;
    double best_score = 0.0;
    int reached = 0;
};

// Replicated annealing under the penalized Gaussian profile likelihood;
// replicate r runs with seed cfg.seed + r.
AnnealBatchResult run_anneal_batch(const Eigen::MatrixXd& data_rows, const Graph* reference,
                                   const AnnealConfig& cfg);

// ---- verification -----------------------------------------------------------

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Oracle suite: exact enumeration constants, equivalence of the junction
// tree count with brute-force enumeration, stationarity residuals, and a
// reversibility spot check. quick trims the exhaustive sweeps.
VerifyReport run_verify(bool quick,
                        const std::function<BigInt(const JunctionTree&)>& mu_fn = nullptr);

}  // namespace jts::experiments
