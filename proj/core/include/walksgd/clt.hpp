#ifndef WALKSGD_CLT_HPP
#define WALKSGD_CLT_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "walksgd/avcov.hpp"

namespace walksgd {

/// Inputs of the limiting-covariance equations: the Hessian at the optimum
/// (symmetric positive definite; for alpha = 1 additionally H - I/2 must be
/// positive definite) and the input-noise covariance at the optimum.
struct CltSpec {
  Eigen::MatrixXd H;
  Eigen::MatrixXd Sigma;
  double alpha = 0.9;
  bool averaged = false;
  bool constant_step = false;

  void validate() const;
};

enum class CltRegime { decaying_nonaveraged, decaying_averaged, constant_averaged };

const char* to_string(CltRegime r);

struct CltCovariance {
  Eigen::MatrixXd V;
  CltRegime regime = CltRegime::decaying_nonaveraged;
  double alpha = 0.0;     // step exponent behind the solve (0 for constant step)
  double residual = 0.0;  // Frobenius residual of the defining equation
};

/// Solves Sigma = H V + V H^T (alpha in (1/2,1)) or
/// Sigma = (H - I/2) V + V (H - I/2)^T (alpha = 1) in the eigenbasis of H:
/// V'_ij = Sigma'_ij / (lambda_i + lambda_j [- 1]). Throws when a denominator
/// is not safely positive.
CltCovariance solve_lyapunov(const CltSpec& spec);

/// V' = H^{-1} Sigma H^{-T}: covariance of averaged iterates, also the
/// constant-step time-averaged limit for quadratic objectives.
CltCovariance averaged_covariance(const CltSpec& spec);

struct CltCheckReport {
  double relative_frobenius_error = 0.0;
  Eigen::VectorXd z_scores;          // per-coordinate scaled-variance z against V
  std::vector<double> coverage;      // empirical 2-sigma coverage per probe weight
  int replicas = 0;
};

/// Compares the ensemble of scaled errors (theta_t - theta*) / sqrt(gamma_t)
/// against the solved covariance: relative Frobenius error of the ensemble
/// second moment, per-coordinate z-scores, and the empirical coverage of the
/// +-2 sqrt(w^T V w) band for `num_weights` seeded Gaussian weights.
/// Throws when fewer than 30 replicas are supplied.
CltCheckReport empirical_clt_check(const std::vector<Eigen::VectorXd>& scaled_errors,
                                   const CltCovariance& clt, int num_weights = 10,
                                   std::uint64_t weight_seed = 0);

}  // namespace walksgd

#endif  // WALKSGD_CLT_HPP
