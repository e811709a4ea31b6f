#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "jts/experiments.hpp"
#include "jts/sampler.hpp"

namespace jts::io {

// CSV with "#"-prefixed metadata lines before the header
void write_trace_csv(const std::string& path, const std::vector<TraceRow>& rows,
                     const std::vector<std::string>& extra_columns,
                     const std::vector<std::string>& metadata);

// two columns "expected,observed", ordered by μ descending
void write_cdf_csv(const std::string& path, const std::vector<experiments::CdfPoint>& cdf,
                   const std::vector<std::string>& metadata);

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m,
                      const std::vector<std::string>& metadata);

}  // namespace jts::io
