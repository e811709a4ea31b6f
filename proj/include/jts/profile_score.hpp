#pragma once

#include <Eigen/Dense>
#include <unordered_map>

#include "jts/graph.hpp"
#include "jts/junction_tree.hpp"
#include "jts/moves.hpp"
#include "jts/vertex_set.hpp"

namespace jts {

// Gaussian profile log-likelihood over decomposable graphs: for each
// graph the covariance is fixed at its maximum likelihood estimate (the
// clique-wise completion of the sample covariance S = YᵀY/n), giving
//   ℓ̂(G) = -(n/2) [ v·log 2π + v + Σ_C logdet S_C - Σ_S logdet S_S ].
// Subset log-determinants are cached, so move deltas cost four lookups.
class ProfileScore {
public:
    explicit ProfileScore(const Eigen::MatrixXd& rows);

    long n() const { return n_; }
    int v() const { return static_cast<int>(s_.cols()); }

    double operator()(const JunctionTree& j) const;

    // change of the profile log-likelihood across a move: the clique and
    // separator sets {XS, YS} are replaced by {XYS, S} (or back)
    double delta(const JunctionTree& j, const MoveProposal& p) const;

    // evaluation through a fresh decomposition; reference-graph oracle
    double score_graph(const Graph& g) const;

private:
    Eigen::MatrixXd s_;  // sample covariance, n denominator
    long n_ = 0;
    mutable std::unordered_map<VertexSet, double, VertexSetHash> logdet_;

    double logdet_subset(const VertexSet& d) const;
};

}  // namespace jts
