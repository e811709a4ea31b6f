#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "jts/junction_tree.hpp"
#include "jts/rng.hpp"
#include "jts/vertex_set.hpp"

namespace jts::ggim {

// Graphical Gaussian intra-class model: zero-mean Gaussian whose
// covariance is the unique positive-definite completion of σ² on the
// diagonal, ρσ² on graph edges, and zero precision off the graph.
struct GgimParams {
    double sigma2 = 1.0;
    double rho = 0.0;
    int v = 0;

    double rho_lower() const { return v > 1 ? -1.0 / (v - 1) : -1e300; }
    void check() const;  // throws ParamOutOfRange
};

// replicate rows; the Gram matrix YᵀY is precomputed so per-subset
// sufficient statistics cost O(|D|²) regardless of n
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(Eigen::MatrixXd rows);

    long n() const { return y_.rows(); }
    int v() const { return static_cast<int>(y_.cols()); }
    const Eigen::MatrixXd& rows() const { return y_; }
    const Eigen::MatrixXd& gram() const { return gram_; }
    double total_sumsq() const { return total_sumsq_; }

    // CSV, one replicate per row, optional header, "#" comments ignored
    static Dataset read_csv(const std::string& path);
    void write_csv(const std::string& path,
                   const std::vector<std::string>& comments = {}) const;

private:
    Eigen::MatrixXd y_;
    Eigen::MatrixXd gram_;
    double total_sumsq_ = 0.0;
};

// per-subset sufficient statistics; depend on the data and the subset
// only, never on the graph or the parameters
struct SubsetStats {
    int v_d = 0;
    long n = 0;
    double q1 = 0.0;  // Σ_r (Σ_{i∈D} y_i^(r))²
    double q2 = 0.0;  // Σ_r Σ_{i∈D} (y_i^(r))²
};

class StatsCache {
public:
    explicit StatsCache(const Dataset& data, std::size_t max_entries = 1000000)
        : data_(&data), max_entries_(max_entries) {}

    const SubsetStats& get(const VertexSet& d);

    std::size_t size() const { return map_.size(); }
    std::uint64_t hits() const { return hits_; }
    std::uint64_t misses() const { return misses_; }

private:
    struct Entry {
        SubsetStats stats;
        std::uint64_t last_used = 0;
    };
    const Dataset* data_;
    std::size_t max_entries_;
    std::unordered_map<VertexSet, Entry, VertexSetHash> map_;
    std::uint64_t tick_ = 0, hits_ = 0, misses_ = 0;

    void evict_oldest();
};

enum class GraphPrior { uniform, per_edge_penalty };

struct PriorSpec {
    double alpha = 1.0;  // Gamma shape for σ^{-2}
    double beta = 1.0;   // Gamma rate for σ^{-2}
    GraphPrior graph_prior = GraphPrior::uniform;
    double edge_penalty = 0.0;  // p(G) ∝ exp(-edge_penalty·|E|)
};

// log of the intra-class normal density on the subset, summed over
// replicates; v_d = 0 contributes zero
double subset_log_density(const SubsetStats& s, const GgimParams& p);

// clique-separator factorisation: Σ clique terms − Σ separator terms
double joint_log_density(const Dataset& data, const JunctionTree& j, const GgimParams& p,
                         StatsCache& cache);

// change of joint_log_density across any move replacing cliques and
// separators {AS, BS} by {ABS, S}; uses the closed-form cancellations
double log_cross_ratio(const VertexSet& a, const VertexSet& b, const VertexSet& s,
                       const Dataset& data, const GgimParams& p, StatsCache& cache);

// n draws from N(0, Σ_G(σ²,ρ)): root clique from its marginal, the rest
// conditionally along the tree links
Dataset simulate_data(const JunctionTree& j, const GgimParams& p, long n, Rng& rng);

// σ^{-2} | ρ, G, y  ~  Gamma(α + nv/2, β + Q/{2(1-ρ)}); returns σ²
double gibbs_update_sigma2(const Dataset& data, const JunctionTree& j, double rho,
                           const PriorSpec& prior, StatsCache& cache, Rng& rng);

// additive random-walk Metropolis on the transform
// g(ρ) = log[{ρ + 1/(v-1)}/(1 - ρ)]; returns the new ρ
double mh_update_rho(const Dataset& data, const JunctionTree& j, double sigma2, double rho,
                     double step, StatsCache& cache, Rng& rng);

double rho_transform(double rho, int v);
double rho_transform_inverse(double t, int v);

double log_graph_prior(const JunctionTree& j, const PriorSpec& prior);

// log p(y|G,σ²,ρ) + log prior(G) − [mu_correction]·log μ(G)
double graph_log_target(const JunctionTree& j, const Dataset& data, const GgimParams& p,
                        const PriorSpec& prior, StatsCache& cache, bool mu_correction);

}  // namespace jts::ggim
