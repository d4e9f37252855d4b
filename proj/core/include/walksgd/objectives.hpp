#ifndef WALKSGD_OBJECTIVES_HPP
#define WALKSGD_OBJECTIVES_HPP

#include <cstdint>
#include <memory>
#include <utility>

#include <Eigen/Core>

#include "walksgd/graph.hpp"

namespace walksgd {

/// Axis-aligned projection box.
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  void clamp(Eigen::VectorXd& theta) const {
    theta = theta.cwiseMax(lo).cwiseMin(hi);
  }
  static Box around(const Eigen::VectorXd& center, double radius) {
    return {center.array() - radius, center.array() + radius};
  }
};

/// Finite-sum objective f = (1/n) sum_i F(., i) with a unique interior
/// minimizer, its Hessian there, and a projection box (default: the
/// minimizer plus/minus 10 per coordinate). Immutable after construction.
class ObjectiveModel {
 public:
  virtual ~ObjectiveModel() = default;

  int dim() const { return dim_; }
  int components() const { return n_; }
  const Eigen::VectorXd& theta_star() const { return theta_star_; }
  const Eigen::MatrixXd& hessian_at_star() const { return hessian_; }
  const Box& projection_box() const { return box_; }

  virtual double eval(const Eigen::VectorXd& theta, int i) const = 0;
  virtual void grad(const Eigen::VectorXd& theta, int i, Eigen::VectorXd& out) const = 0;

  /// (1/n) sum_i grad F(theta, i).
  Eigen::VectorXd full_gradient(const Eigen::VectorXd& theta) const;

  /// Rows are grad F(theta*, i): the natural covariance test function.
  Eigen::MatrixXd gradients_at_star() const;

 protected:
  void finalize(Eigen::VectorXd theta_star, Eigen::MatrixXd hessian) {
    theta_star_ = std::move(theta_star);
    hessian_ = std::move(hessian);
    box_ = Box::around(theta_star_, 10.0);
  }

  int dim_ = 0;
  int n_ = 0;
  Eigen::VectorXd theta_star_;
  Eigen::MatrixXd hessian_;
  Box box_;
};

/// F(theta, i) = (theta - b_i)^2 / 2 on scalar theta; minimizer mean(b).
std::shared_ptr<const ObjectiveModel> make_quadratic_scalar(const Eigen::VectorXd& b);

/// F(theta, i) = log(1 + exp(-y_i x_i^T theta)) + ||theta||^2 / 2; the ridge
/// makes f 1-strongly convex; minimizer found by damped Newton to
/// ||grad f|| <= 1e-10.
std::shared_ptr<const ObjectiveModel> make_logistic_ridge(const Eigen::MatrixXd& X,
                                                          const Eigen::VectorXd& y);

/// Unit-row-norm Gaussian features with labels from a planted parameter and a
/// fraction of sign flips.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> synthetic_logistic_data(
    int n, int p, double flip_prob, std::uint64_t seed);

/// F(theta, i) = theta^T (a_i a_i^T + D_i) theta + b^T theta on R^10 with
/// sum_i D_i = 0: individually non-convex components, quadratic aggregate.
/// With `nonconvex_shift` every D_i loses 0.1 on its first diagonal slot,
/// making the aggregate itself possibly indefinite. n must be even.
std::shared_ptr<const ObjectiveModel> make_sum_nonconvex(int n, std::uint64_t seed,
                                                         bool nonconvex_shift = false);

/// Re-verifies the stored minimizer: throws unless ||grad f(theta*)|| <= 1e-8.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> solve_theta_star(const ObjectiveModel& m);

}  // namespace walksgd

#endif  // WALKSGD_OBJECTIVES_HPP
