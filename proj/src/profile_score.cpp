#include "jts/profile_score.hpp"

#include <cmath>
#include <stdexcept>

#include "jts/chordal.hpp"
#include "jts/errors.hpp"

namespace jts {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
}

ProfileScore::ProfileScore(const Eigen::MatrixXd& rows) : n_(rows.rows()) {
    if (n_ < 1) throw std::invalid_argument("ProfileScore: empty data");
    s_ = rows.transpose() * rows / double(n_);
}

double ProfileScore::logdet_subset(const VertexSet& d) const {
    if (d.empty()) return 0.0;
    auto it = logdet_.find(d);
    if (it != logdet_.end()) return it->second;
    const auto& m = d.members();
    Eigen::MatrixXd block(m.size(), m.size());
    for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = 0; b < m.size(); ++b) block(a, b) = s_(m[a], m[b]);
    Eigen::LLT<Eigen::MatrixXd> llt(block);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("ProfileScore: singular sample covariance block");
    const double ld = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    logdet_.emplace(d, ld);
    return ld;
}

double ProfileScore::operator()(const JunctionTree& j) const {
    double acc = 0.0;
    for (int n : j.active_nodes()) acc += logdet_subset(j.clique(n));
    for (int l : j.active_links()) acc -= logdet_subset(j.separator(l));
    return -0.5 * double(n_) * (v() * (kLog2Pi + 1.0) + acc);
}

double ProfileScore::delta(const JunctionTree& j, const MoveProposal& p) const {
    const VertexSet xs = p.X.set_union(p.S);
    const VertexSet ys = p.Y.set_union(p.S);
    const VertexSet xys = xs.set_union(p.Y);
    const double d = logdet_subset(xys) + logdet_subset(p.S) - logdet_subset(xs) -
                     logdet_subset(ys);
    const double sign = p.direction == MoveDir::connect ? 1.0 : -1.0;
    return -0.5 * double(n_) * sign * d;
}

double ProfileScore::score_graph(const Graph& g) const {
    auto mcs = maximum_cardinality_search(g);
    if (!mcs.decomposable) throw NotDecomposable("ProfileScore: graph is not chordal");
    double acc = 0.0;
    for (const auto& c : mcs.decomposition->cliques) acc += logdet_subset(c);
    for (const auto& s : mcs.decomposition->separators) acc -= logdet_subset(s);
    return -0.5 * double(n_) * (v() * (kLog2Pi + 1.0) + acc);
}

}  // namespace jts
