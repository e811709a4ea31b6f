#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jts/bignum.hpp"
#include "jts/graph.hpp"
#include "jts/junction_tree.hpp"
#include "jts/ggim.hpp"
#include "jts/moves.hpp"
#include "jts/sampler.hpp"

namespace jts::oracle {

// ---- exhaustive graph table --------------------------------------------

struct GraphRecord {
    std::uint64_t edge_mask = 0;
    BigInt mu = 0;
    std::int64_t counter = 0;
};

// All decomposable graphs on v labelled vertices, keyed by their sorted
// clique list, with the junction tree count recorded per graph.
class GraphTable {
public:
    explicit GraphTable(int v) : v_(v) {}

    int num_vertices() const { return v_; }
    std::size_t size() const { return rows_.size(); }
    std::uint64_t graphs_scanned() const { return scanned_; }

    void add(const std::string& key, GraphRecord rec) {
        index_.emplace(key, rows_.size());
        rows_.push_back(std::move(rec));
    }
    void set_scanned(std::uint64_t n) { scanned_ = n; }

    GraphRecord* find(const std::string& key) {
        auto it = index_.find(key);
        return it == index_.end() ? nullptr : &rows_[it->second];
    }
    const std::vector<GraphRecord>& rows() const { return rows_; }
    std::vector<GraphRecord>& rows() { return rows_; }

    // indices sorted by mu descending (stable on edge mask)
    std::vector<std::size_t> order_by_mu_desc() const;

    std::int64_t count_with_mu_one() const;
    BigInt total_mu() const;

private:
    int v_;
    std::uint64_t scanned_ = 0;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<GraphRecord> rows_;
};

// canonical counter key: the sorted clique list of a decomposition
std::string clique_list_key(const JunctionTree& j);
std::string clique_list_key(const Graph& g);

// Sweeps all 2^{v(v-1)/2} graphs, keeping the decomposable ones. v <= 7.
GraphTable enumerate_decomposable(int v);

// ---- brute-force junction tree enumeration ------------------------------

// Every spanning tree of the junction graph (all labelled trees on the
// cliques, via Prüfer sequences) filtered by the junction property.
std::vector<JunctionTree> brute_force_junction_trees(const Graph& g);

// all junction trees of all decomposable graphs on v vertices
std::vector<JunctionTree> all_junction_trees(int v);

// ---- exhaustive proposal enumeration ------------------------------------

// One possible outcome of the proposal sampler together with the exact
// probability of drawing it, computed by direct arithmetic independent of
// the production probability code. Disconnect case (a) outcomes are
// expanded per neighbour assignment.
struct ProposalOutcome {
    MoveProposal proposal;  // q fields not filled in
    double prob = 0.0;
};

std::vector<ProposalOutcome> enumerate_connect_proposals(const JunctionTree& j,
                                                         MoveArity arity);
std::vector<ProposalOutcome> enumerate_disconnect_proposals(const JunctionTree& j,
                                                            MoveArity arity);

// ---- Gaussian model oracles ----------------------------------------------

// Precision matrix assembled as Σ_C pad(Σ_C⁻¹) − Σ_S pad(Σ_S⁻¹) over a
// clique decomposition, each block inverted numerically. Its inverse is
// the unique positive-definite completion fixing σ² on the diagonal and
// ρσ² on edges, with zero precision off the graph.
struct PrecisionOracle {
    Eigen::MatrixXd k;
    double log_det_k = 0.0;
};

PrecisionOracle precision_matrix_oracle(const Graph& g, const ggim::GgimParams& p);

// largest violation of the completion properties of k⁻¹ (diagonal σ²,
// edges ρσ², zero precision off the graph)
double completion_error(const Graph& g, const ggim::GgimParams& p);

// exact multivariate normal log density of the replicate rows under K
double mvn_log_density(const PrecisionOracle& o, const Eigen::MatrixXd& rows);

// Graph-state Metropolis sampler: a uniformly random vertex pair is
// toggled, the move is dropped if decomposability breaks, and accepted on
// the plain target ratio. Used to cross-validate the junction tree
// sampler.
struct GgSamplerResult {
    Graph final_graph;
    std::int64_t accepted = 0;
};

GgSamplerResult reference_gg_sampler(
    const Graph& g0, const std::function<double(const Graph&)>& log_target,
    std::int64_t sweeps, Rng& rng,
    const std::function<void(const Graph&, std::int64_t)>& on_sweep = nullptr);

// ---- exact stationarity -------------------------------------------------

struct TransitionCheck {
    int states = 0;
    double residual = 0.0;        // max |pi P - pi|
    double max_row_error = 0.0;   // max |row sum - 1|
    double peskun_violation = 0;  // max(two_stage_alpha - standard_alpha)
};

// Assembles the exact transition matrix of the junction tree chain over
// every junction tree of every decomposable graph on v vertices and
// measures the stationarity residual of the normalized target.
TransitionCheck transition_matrix_check(int v,
                                        const std::function<double(const JunctionTree&)>& log_pi,
                                        MoveArity arity, AcceptRule rule);

}  // namespace jts::oracle
