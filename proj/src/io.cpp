#include "jts/io.hpp"

#include <fstream>
#include <stdexcept>

namespace jts::io {

namespace {

std::ofstream open_with_metadata(const std::string& path,
                                 const std::vector<std::string>& metadata) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path);
    for (const auto& m : metadata) out << "# " << m << "\n";
    out.precision(12);
    return out;
}

}  // namespace

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& rows,
                     const std::vector<std::string>& extra_columns,
                     const std::vector<std::string>& metadata) {
    auto out = open_with_metadata(path, metadata);
    out << "sweep,log_target,n_edges,n_cliques,accepted";
    for (const auto& c : extra_columns) out << "," << c;
    out << "\n";
    for (const auto& r : rows) {
        out << r.sweep << "," << r.log_target << "," << r.n_edges << "," << r.n_cliques << ","
            << (r.accepted ? 1 : 0);
        for (double x : r.extras) out << "," << x;
        out << "\n";
    }
}

void write_cdf_csv(const std::string& path, const std::vector<experiments::CdfPoint>& cdf,
                   const std::vector<std::string>& metadata) {
    auto out = open_with_metadata(path, metadata);
    out << "expected,observed\n";
    for (const auto& p : cdf) out << p.expected << "," << p.observed << "\n";
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m,
                      const std::vector<std::string>& metadata) {
    auto out = open_with_metadata(path, metadata);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out << ",";
            out << m(r, c);
        }
        out << "\n";
    }
}

}  // namespace jts::io
