#ifndef WALKSGD_IO_HPP
#define WALKSGD_IO_HPP

#include <string>

#include <Eigen/Core>

#include "walksgd/avcov.hpp"
#include "walksgd/clt.hpp"
#include "walksgd/kernels.hpp"

namespace walksgd {

/// Kernel CSV: first line n, then n comma-separated rows at full precision.
/// Flags and pi travel in a JSON sidecar (same path with .json appended).
void save_kernel(const TransitionKernel& k, const std::string& csv_path);
TransitionKernel load_kernel(const std::string& csv_path);

/// Bare matrix CSV, one comma-separated row per line.
void save_matrix_csv(const Eigen::MatrixXd& m, const std::string& path);
Eigen::MatrixXd load_matrix_csv(const std::string& path);

/// Covariance exports: <base>.csv matrix plus <base>.json metadata.
void save_asym_cov(const AsymCov& cov, const std::string& base_path);
void save_clt_covariance(const CltCovariance& clt, const std::string& base_path);

}  // namespace walksgd

#endif  // WALKSGD_IO_HPP
