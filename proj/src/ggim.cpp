#include "jts/ggim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "jts/errors.hpp"
#include "jts/tree_count.hpp"

namespace jts::ggim {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
}

void GgimParams::check() const {
    if (v < 1) throw ParamOutOfRange("GgimParams: dimension must be >= 1");
    if (!(sigma2 > 0.0)) throw ParamOutOfRange("GgimParams: sigma2 must be positive");
    if (!(rho < 1.0) || !(rho > rho_lower()))
        throw ParamOutOfRange("GgimParams: rho outside (-1/(v-1), 1)");
}

Dataset::Dataset(Eigen::MatrixXd rows) : y_(std::move(rows)) {
    gram_ = y_.transpose() * y_;
    total_sumsq_ = gram_.trace();
}

Dataset Dataset::read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open data file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first_content = true;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ls(line);
        std::string field;
        bool numeric = true;
        while (std::getline(ls, field, ',')) {
            try {
                std::size_t pos = 0;
                double x = std::stod(field, &pos);
                row.push_back(x);
            } catch (...) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (first_content) {  // header row
                first_content = false;
                continue;
            }
            throw std::runtime_error("data file: non-numeric field in " + path);
        }
        first_content = false;
        if (!rows.empty() && rows.front().size() != row.size())
            throw std::runtime_error("data file: ragged rows in " + path);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("data file: no rows in " + path);
    Eigen::MatrixXd m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t k = 0; k < rows[i].size(); ++k) m(i, k) = rows[i][k];
    return Dataset(std::move(m));
}

void Dataset::write_csv(const std::string& path, const std::vector<std::string>& comments) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write data file: " + path);
    for (const auto& c : comments) out << "# " << c << "\n";
    out.precision(17);
    for (long r = 0; r < y_.rows(); ++r) {
        for (int c = 0; c < y_.cols(); ++c) {
            if (c) out << ",";
            out << y_(r, c);
        }
        out << "\n";
    }
}

const SubsetStats& StatsCache::get(const VertexSet& d) {
    ++tick_;
    auto it = map_.find(d);
    if (it != map_.end()) {
        ++hits_;
        it->second.last_used = tick_;
        return it->second.stats;
    }
    ++misses_;
    SubsetStats s;
    s.v_d = d.size();
    s.n = data_->n();
    const auto& gram = data_->gram();
    const auto& m = d.members();
    for (std::size_t i = 0; i < m.size(); ++i) {
        s.q2 += gram(m[i], m[i]);
        s.q1 += gram(m[i], m[i]);
        for (std::size_t k = i + 1; k < m.size(); ++k) s.q1 += 2.0 * gram(m[i], m[k]);
    }
    if (map_.size() >= max_entries_) evict_oldest();
    auto [ins, ok] = map_.emplace(d, Entry{s, tick_});
    return ins->second.stats;
}

void StatsCache::evict_oldest() {
    // drop the least recently used tenth
    std::vector<std::uint64_t> ages;
    ages.reserve(map_.size());
    for (const auto& [k, e] : map_) ages.push_back(e.last_used);
    auto cut = ages.begin() + ages.size() / 10;
    std::nth_element(ages.begin(), cut, ages.end());
    const std::uint64_t threshold = *cut;
    for (auto it = map_.begin(); it != map_.end();) {
        if (it->second.last_used <= threshold)
            it = map_.erase(it);
        else
            ++it;
    }
}

double subset_log_density(const SubsetStats& s, const GgimParams& p) {
    if (s.v_d == 0) return 0.0;
    p.check();
    const double one_minus = 1.0 - p.rho;
    const double denom = 1.0 + (s.v_d - 1) * p.rho;  // 1 - ρ + v_D ρ
    if (!(denom > 0.0)) throw ParamOutOfRange("subset_log_density: 1-rho+v_D*rho underflow");
    const double n = static_cast<double>(s.n);
    double ll = -0.5 * n * s.v_d * (kLog2Pi + std::log(p.sigma2));
    ll -= 0.5 * n * ((s.v_d - 1) * std::log(one_minus) + std::log(denom));
    ll -= (s.q2 - p.rho * s.q1 / denom) / (2.0 * p.sigma2 * one_minus);
    return ll;
}

double joint_log_density(const Dataset& data, const JunctionTree& j, const GgimParams& p,
                         StatsCache& cache) {
    double ll = 0.0;
    for (int n : j.active_nodes()) ll += subset_log_density(cache.get(j.clique(n)), p);
    for (int l : j.active_links()) {
        const VertexSet& sep = j.separator(l);
        if (!sep.empty()) ll -= subset_log_density(cache.get(sep), p);
    }
    return ll;
}

namespace {

// f(D) = 1 + v_D ρ/(1-ρ), f(∅) = 1
double f_term(int v_d, double rho) { return 1.0 + v_d * rho / (1.0 - rho); }

// H(D) = Σ_r (Σ_{i∈D} y_i)² / (1-ρ+v_D ρ), H(∅) = 0
double h_term(const SubsetStats& s, double rho) {
    if (s.v_d == 0) return 0.0;
    return s.q1 / (1.0 + (s.v_d - 1) * rho);
}

}  // namespace

double log_cross_ratio(const VertexSet& a, const VertexSet& b, const VertexSet& s,
                       const Dataset& data, const GgimParams& p, StatsCache& cache) {
    p.check();
    if (a.empty() || b.empty() || a.intersects(b) || a.intersects(s) || b.intersects(s))
        throw ParamOutOfRange("log_cross_ratio: A, B, S must be disjoint, A and B non-empty");
    const VertexSet as = a.set_union(s);
    const VertexSet bs = b.set_union(s);
    const VertexSet abs = as.set_union(b);
    const double n = static_cast<double>(data.n());

    const double logf = std::log(f_term(as.size(), p.rho)) +
                        std::log(f_term(bs.size(), p.rho)) -
                        std::log(f_term(abs.size(), p.rho)) - std::log(f_term(s.size(), p.rho));
    const SubsetStats& st_as = cache.get(as);
    const SubsetStats& st_bs = cache.get(bs);
    const SubsetStats& st_abs = cache.get(abs);
    const double h_s = s.empty() ? 0.0 : h_term(cache.get(s), p.rho);
    const double hsum =
        h_term(st_abs, p.rho) + h_s - h_term(st_as, p.rho) - h_term(st_bs, p.rho);
    return 0.5 * n * logf + p.rho * hsum / (2.0 * p.sigma2 * (1.0 - p.rho));
}

Dataset simulate_data(const JunctionTree& j, const GgimParams& p, long n, Rng& rng) {
    p.check();
    if (p.v != j.num_vertices())
        throw ParamOutOfRange("simulate_data: dimension mismatch");

    // BFS from the lowest-index node; each step introduces the vertices
    // of a clique beyond its entry separator
    struct Step {
        std::vector<int> fresh;  // vertices drawn at this step
        std::vector<int> given;  // separator vertices already drawn
    };
    std::vector<Step> steps;
    {
        int root = *std::min_element(j.active_nodes().begin(), j.active_nodes().end());
        std::vector<char> seen(root + 1, 0);
        auto mark = [&](int x) {
            if (x >= static_cast<int>(seen.size())) seen.resize(x + 1, 0);
            seen[x] = 1;
        };
        auto is_seen = [&](int x) { return x < static_cast<int>(seen.size()) && seen[x]; };
        std::vector<std::pair<int, int>> queue{{root, -1}};  // (node, entry link)
        mark(root);
        std::size_t qi = 0;
        while (qi < queue.size()) {
            auto [node, entry] = queue[qi++];
            Step st;
            if (entry >= 0) st.given = j.separator(entry).members();
            VertexSet given_set = entry >= 0 ? j.separator(entry) : VertexSet();
            st.fresh = j.clique(node).set_difference(given_set).members();
            steps.push_back(std::move(st));
            for (int l : j.links_of(node)) {
                int o = j.link_other(l, node);
                if (!is_seen(o)) {
                    mark(o);
                    queue.emplace_back(o, l);
                }
            }
        }
    }

    Eigen::MatrixXd y(n, p.v);
    const double sd = std::sqrt((1.0 - p.rho) * p.sigma2);
    for (long r = 0; r < n; ++r) {
        for (const auto& st : steps) {
            const int t = static_cast<int>(st.fresh.size());
            if (t == 0) continue;
            const int vs = static_cast<int>(st.given.size());
            const double cc = p.rho / (1.0 - p.rho + vs * p.rho);
            double ssum = 0.0;
            for (int z : st.given) ssum += y(r, z);
            const double mean = cc * ssum;
            double zbar = 0.0;
            std::vector<double> z(t);
            for (int k = 0; k < t; ++k) {
                z[k] = rng.normal();
                zbar += z[k];
            }
            zbar /= t;
            const double stretch = std::sqrt(1.0 + cc * t);
            for (int k = 0; k < t; ++k)
                y(r, st.fresh[k]) = mean + sd * ((z[k] - zbar) + stretch * zbar);
        }
    }
    return Dataset(std::move(y));
}

double gibbs_update_sigma2(const Dataset& data, const JunctionTree& j, double rho,
                           const PriorSpec& prior, StatsCache& cache, Rng& rng) {
    GgimParams p{1.0, rho, data.v()};
    p.check();
    double q = data.total_sumsq();
    for (int n : j.active_nodes()) q -= rho * h_term(cache.get(j.clique(n)), rho);
    for (int l : j.active_links()) {
        const VertexSet& sep = j.separator(l);
        if (!sep.empty()) q += rho * h_term(cache.get(sep), rho);
    }
    const double shape = prior.alpha + data.n() * data.v() / 2.0;
    const double rate = prior.beta + q / (2.0 * (1.0 - rho));
    if (!(rate > 0.0)) throw ParamOutOfRange("gibbs_update_sigma2: non-positive rate");
    const double precision = rng.gamma(shape, 1.0 / rate);
    return 1.0 / precision;
}

double rho_transform(double rho, int v) {
    return std::log((rho + 1.0 / (v - 1)) / (1.0 - rho));
}

double rho_transform_inverse(double t, int v) {
    return 1.0 - (double(v) / (v - 1)) / (std::exp(t) + 1.0);
}

double mh_update_rho(const Dataset& data, const JunctionTree& j, double sigma2, double rho,
                     double step, StatsCache& cache, Rng& rng) {
    const int v = data.v();
    if (v < 2) return rho;
    const double z = rng.normal(0.0, step);
    const double star = rho_transform_inverse(rho_transform(rho, v) + z, v);

    GgimParams cur{sigma2, rho, v};
    GgimParams prop{sigma2, star, v};
    const double ll_cur = joint_log_density(data, j, cur, cache);
    const double ll_prop = joint_log_density(data, j, prop, cache);
    // uniform prior on the valid range; the remaining factor is the
    // Jacobian {ρ+1/(v-1)}(1-ρ) of the transform
    const double jac = std::log((star + 1.0 / (v - 1)) * (1.0 - star)) -
                       std::log((rho + 1.0 / (v - 1)) * (1.0 - rho));
    const double log_alpha = ll_prop - ll_cur + jac;
    return std::log(rng.uniform()) < std::min(0.0, log_alpha) ? star : rho;
}

double log_graph_prior(const JunctionTree& j, const PriorSpec& prior) {
    switch (prior.graph_prior) {
        case GraphPrior::uniform:
            return 0.0;
        case GraphPrior::per_edge_penalty:
            return -prior.edge_penalty * double(j.num_graph_edges());
    }
    return 0.0;
}

double graph_log_target(const JunctionTree& j, const Dataset& data, const GgimParams& p,
                        const PriorSpec& prior, StatsCache& cache, bool mu_correction) {
    double lt = joint_log_density(data, j, p, cache) + log_graph_prior(j, prior);
    if (mu_correction) lt -= log_count_junction_trees(j);
    return lt;
}

}  // namespace jts::ggim
