#ifndef WALKSGD_TESTS_ORACLES_HPP
#define WALKSGD_TESTS_ORACLES_HPP

// Independent test oracles. Nothing here may call into the library paths it
// is used to check: the Lyapunov integral goes through a scaling-and-squaring
// matrix exponential and adaptive Simpson quadrature, not the eigenbasis
// solve; the two-state long-run variance is the closed form.

#include <Eigen/Core>

namespace walksgd::oracles {

/// Long-run variance of the indicator of state 2 for the two-state chain with
/// flip probabilities p and q: (2 - p - q) p q / (p + q)^3.
double two_state_av(double p, double q);

/// e^{A} by scaling and squaring with a truncated Taylor series.
Eigen::MatrixXd expm(const Eigen::MatrixXd& A);

/// integral_0^T e^{-Ht} Sigma e^{-H^T t} dt by adaptive Simpson quadrature.
Eigen::MatrixXd lyapunov_integral(const Eigen::MatrixXd& H, const Eigen::MatrixXd& Sigma,
                                  double T, double tol = 1e-10);

/// Full integral with automatic horizon: doubles T until the integrand is
/// negligible relative to Sigma.
Eigen::MatrixXd lyapunov_integral_full(const Eigen::MatrixXd& H,
                                       const Eigen::MatrixXd& Sigma,
                                       double tol = 1e-10);

}  // namespace walksgd::oracles

#endif  // WALKSGD_TESTS_ORACLES_HPP
