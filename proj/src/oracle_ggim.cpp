#include <Eigen/Dense>
#include <cmath>

#include "jts/chordal.hpp"
#include "jts/errors.hpp"
#include "jts/oracle.hpp"

namespace jts::oracle {

namespace {

Eigen::MatrixXd intraclass_block(const VertexSet& d, const ggim::GgimParams& p) {
    const int k = d.size();
    Eigen::MatrixXd block = Eigen::MatrixXd::Constant(k, k, p.rho * p.sigma2);
    block.diagonal().setConstant(p.sigma2);
    return block;
}

}  // namespace

PrecisionOracle precision_matrix_oracle(const Graph& g, const ggim::GgimParams& p) {
    p.check();
    auto mcs = maximum_cardinality_search(g);
    if (!mcs.decomposable)
        throw NotDecomposable("precision_matrix_oracle: graph is not chordal");
    const auto& dec = *mcs.decomposition;
    const int v = g.num_vertices();

    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(v, v);
    auto pad_add = [&](const VertexSet& d, double sign) {
        if (d.empty()) return;
        Eigen::MatrixXd inv = intraclass_block(d, p).inverse();
        const auto& m = d.members();
        for (std::size_t a = 0; a < m.size(); ++a)
            for (std::size_t b = 0; b < m.size(); ++b) k(m[a], m[b]) += sign * inv(a, b);
    };
    for (const auto& c : dec.cliques) pad_add(c, +1.0);
    for (const auto& s : dec.separators) pad_add(s, -1.0);

    PrecisionOracle out;
    out.k = k;
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() != Eigen::Success)
        throw ParamOutOfRange("precision_matrix_oracle: K not positive definite");
    out.log_det_k = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    return out;
}

double completion_error(const Graph& g, const ggim::GgimParams& p) {
    PrecisionOracle o = precision_matrix_oracle(g, p);
    Eigen::MatrixXd sigma = o.k.inverse();
    const int v = g.num_vertices();
    double err = 0.0;
    for (int i = 0; i < v; ++i) {
        err = std::max(err, std::abs(sigma(i, i) - p.sigma2));
        for (int j = i + 1; j < v; ++j) {
            if (g.has_edge(i, j))
                err = std::max(err, std::abs(sigma(i, j) - p.rho * p.sigma2));
            else
                err = std::max(err, std::abs(o.k(i, j)));
        }
    }
    return err;
}

double mvn_log_density(const PrecisionOracle& o, const Eigen::MatrixXd& rows) {
    const double n = static_cast<double>(rows.rows());
    const double v = static_cast<double>(rows.cols());
    const double quad = (rows * o.k).cwiseProduct(rows).sum();
    return n * (-0.5 * v * std::log(2.0 * M_PI) + 0.5 * o.log_det_k) - 0.5 * quad;
}

GgSamplerResult reference_gg_sampler(
    const Graph& g0, const std::function<double(const Graph&)>& log_target,
    std::int64_t sweeps, Rng& rng,
    const std::function<void(const Graph&, std::int64_t)>& on_sweep) {
    GgSamplerResult res;
    Graph g = g0;
    double cur = log_target(g);
    const int v = g.num_vertices();
    for (std::int64_t sweep = 1; sweep <= sweeps; ++sweep) {
        int i = rng.uniform_int(0, v - 1);
        int k = rng.uniform_int(0, v - 2);
        if (k >= i) ++k;
        g.toggle_edge(i, k);
        bool accepted = false;
        if (is_decomposable(g)) {
            const double prop = log_target(g);
            if (std::log(rng.uniform()) < std::min(0.0, prop - cur)) {
                cur = prop;
                accepted = true;
            }
        }
        if (!accepted) g.toggle_edge(i, k);  // undo
        if (accepted) ++res.accepted;
        if (on_sweep) on_sweep(g, sweep);
    }
    res.final_graph = std::move(g);
    return res;
}

}  // namespace jts::oracle
