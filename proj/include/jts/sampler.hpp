#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "jts/bignum.hpp"
#include "jts/junction_tree.hpp"
#include "jts/moves.hpp"
#include "jts/rng.hpp"
#include "jts/tree_count.hpp"

namespace jts {

enum class AcceptRule { standard, two_stage };

// Target on junction trees: log_graph_score evaluates log π{G(J)} (prior
// times likelihood, up to a constant); with mu_correction the chain
// targets π̃(J) = π{G(J)} / μ{G(J)}, so graph-level conclusions are free
// of the junction tree multiplicity. log_score_delta, when set, must
// equal the change of log_graph_score across a move; it spares the full
// evaluation on the proposal path.
struct TargetDistribution {
    std::function<double(const JunctionTree&)> log_graph_score;
    bool mu_correction = false;
    std::function<double(const JunctionTree&, const MoveProposal&)> log_score_delta;
};

struct ChainOptions {
    std::int64_t sweeps = 0;
    std::int64_t thin = 100;
    std::int64_t param_update_every = 1000;
    std::int64_t randomize_tree_every = 1000;
    AcceptRule rule = AcceptRule::standard;
    MoveArity arity = MoveArity::single;
    std::uint64_t seed = 0;
};

struct AnnealOptions {
    double cooling_factor = 0.999999;  // in (0,1)
    double penalty_per_edge = 0.0;
    double initial_temperature = 1.0;
};

struct TraceRow {
    std::int64_t sweep = 0;
    double log_target = 0.0;
    long n_edges = 0;
    int n_cliques = 0;
    bool accepted = false;
    std::vector<double> extras;
};

struct ChainHooks {
    // runs every param_update_every sweeps; may change the target's
    // parameters (the chain re-evaluates its cached score afterwards)
    std::function<void(const JunctionTree&, Rng&)> param_update;
    // extra trace columns supplied by the caller (e.g. sigma2, rho)
    std::function<std::vector<double>()> extra_values;
    // observes the state once per sweep, after the move
    std::function<void(const JunctionTree&, std::int64_t sweep, bool accepted)> on_sweep;
};

struct RunResult {
    std::vector<TraceRow> trace;
    JunctionTree final_tree;
    std::int64_t accepted = 0;
    std::int64_t sweeps = 0;
};

// chain state with the cached score and junction tree count
struct ChainState {
    JunctionTree tree;
    double log_score = 0.0;
    BigInt mu = 1;
    double temperature = 1.0;

    ChainState() = default;
    ChainState(JunctionTree j, const TargetDistribution& t);
};

// One Metropolis-Hastings update: connect or disconnect by a fair coin,
// acceptance per rule; the 1/2 coin factors cancel. Proposal-level
// rejections leave the state untouched. The μ ratio enters the
// acceptance as an exact big rational taken to log space once.
bool mh_step_state(ChainState& s, const TargetDistribution& t, AcceptRule rule,
                   MoveArity arity, Rng& rng);

std::pair<JunctionTree, bool> mh_step(const JunctionTree& j, const TargetDistribution& t,
                                      const ChainOptions& opts, Rng& rng);

// α̃ = min{1, q-ratio} · min{1, π-ratio}, evaluated in that order; the
// second factor is only consulted when the first test passes
bool two_stage_accept(double log_pi_ratio, double log_q_ratio, Rng& rng);
bool two_stage_accept(const std::function<double()>& log_pi_ratio, double log_q_ratio,
                      Rng& rng);

RunResult run_chain(const JunctionTree& j0, const TargetDistribution& t,
                    const ChainOptions& opts, const ChainHooks& hooks = {});

struct AnnealResult {
    JunctionTree best_tree;
    double best_score = 0.0;
    JunctionTree final_tree;
    std::vector<TraceRow> trace;  // extras: {temperature}
};

// Simulated annealing on exp{(log_likelihood - penalty·|E|)/T} with the
// temperature cooled geometrically each sweep; μ correction is off (this
// optimizes over graphs). delta, when set, mirrors log_likelihood across
// a move.
AnnealResult anneal(const JunctionTree& j0,
                    const std::function<double(const JunctionTree&)>& log_likelihood,
                    const std::function<double(const JunctionTree&, const MoveProposal&)>& delta,
                    const AnnealOptions& a_opts, const ChainOptions& opts, Rng& rng);

// Single-edge connects leading from j to the one-clique tree; exercises
// the irreducibility argument and is used by tests only.
std::vector<MoveProposal> irreducibility_path(JunctionTree j);

}  // namespace jts
