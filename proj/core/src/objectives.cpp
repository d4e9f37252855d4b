#include "walksgd/objectives.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "walksgd/rng.hpp"

namespace walksgd {

Eigen::VectorXd ObjectiveModel::full_gradient(const Eigen::VectorXd& theta) const {
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(dim_);
  Eigen::VectorXd g(dim_);
  for (int i = 0; i < n_; ++i) {
    grad(theta, i, g);
    acc += g;
  }
  return acc / static_cast<double>(n_);
}

Eigen::MatrixXd ObjectiveModel::gradients_at_star() const {
  Eigen::MatrixXd G(n_, dim_);
  Eigen::VectorXd g(dim_);
  for (int i = 0; i < n_; ++i) {
    grad(theta_star_, i, g);
    G.row(i) = g.transpose();
  }
  return G;
}

namespace {

class QuadraticScalarObjective final : public ObjectiveModel {
 public:
  explicit QuadraticScalarObjective(Eigen::VectorXd b) : b_(std::move(b)) {
    dim_ = 1;
    n_ = static_cast<int>(b_.size());
    Eigen::VectorXd star(1);
    star[0] = b_.mean();
    finalize(star, Eigen::MatrixXd::Identity(1, 1));
  }

  double eval(const Eigen::VectorXd& theta, int i) const override {
    const double r = theta[0] - b_[i];
    return 0.5 * r * r;
  }
  void grad(const Eigen::VectorXd& theta, int i, Eigen::VectorXd& out) const override {
    out[0] = theta[0] - b_[i];
  }

 private:
  Eigen::VectorXd b_;
};

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

class LogisticRidgeObjective final : public ObjectiveModel {
 public:
  LogisticRidgeObjective(Eigen::MatrixXd X, Eigen::VectorXd y)
      : X_(std::move(X)), y_(std::move(y)) {
    n_ = static_cast<int>(X_.rows());
    dim_ = static_cast<int>(X_.cols());
    if (y_.size() != n_) throw std::invalid_argument("logistic: label count mismatch");
    for (int i = 0; i < n_; ++i) {
      if (y_[i] != 1.0 && y_[i] != -1.0) {
        throw std::invalid_argument("logistic: labels must be +-1");
      }
    }
    solve_minimizer();
  }

  double eval(const Eigen::VectorXd& theta, int i) const override {
    const double z = -y_[i] * X_.row(i).dot(theta);
    // log(1 + e^z), overflow-safe
    const double soft = z > 30.0 ? z : std::log1p(std::exp(z));
    return soft + 0.5 * theta.squaredNorm();
  }

  void grad(const Eigen::VectorXd& theta, int i, Eigen::VectorXd& out) const override {
    const double margin = y_[i] * X_.row(i).dot(theta);
    const double w = -y_[i] * sigmoid(-margin);
    out = theta;
    out.noalias() += w * X_.row(i).transpose();
  }

 private:
  void solve_minimizer() {
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(dim_);
    bool converged = false;
    for (int iter = 0; iter < 200; ++iter) {
      Eigen::VectorXd grad_f = theta;
      Eigen::MatrixXd hess = Eigen::MatrixXd::Identity(dim_, dim_);
      for (int i = 0; i < n_; ++i) {
        const double margin = y_[i] * X_.row(i).dot(theta);
        const double s = sigmoid(-margin);
        grad_f.noalias() += (-y_[i] * s / n_) * X_.row(i).transpose();
        hess.noalias() +=
            (s * (1.0 - s) / n_) * (X_.row(i).transpose() * X_.row(i));
      }
      if (grad_f.norm() <= 1e-10) {
        finalize(theta, hess);
        converged = true;
        break;
      }
      const Eigen::VectorXd dir = hess.ldlt().solve(grad_f);
      double step = 1.0;
      const double f0 = aggregate(theta);
      while (step > 1e-8 && aggregate(theta - step * dir) > f0) step *= 0.5;
      theta -= step * dir;
    }
    if (!converged) {
      throw std::runtime_error("logistic: Newton failed to converge in 200 iterations");
    }
  }

  double aggregate(const Eigen::VectorXd& theta) const {
    double acc = 0.0;
    for (int i = 0; i < n_; ++i) acc += eval(theta, i);
    return acc / n_;
  }

  Eigen::MatrixXd X_;
  Eigen::VectorXd y_;
};

class SumNonconvexObjective final : public ObjectiveModel {
 public:
  SumNonconvexObjective(int n, std::uint64_t seed, bool nonconvex_shift) {
    constexpr int kDim = 10;
    if (n % 2 != 0) {
      throw std::invalid_argument("sum_nonconvex: n must be even for the half split");
    }
    if (n < 2 * kDim) {
      throw std::invalid_argument("sum_nonconvex: n too small for invertible design");
    }
    dim_ = kDim;
    n_ = n;

    Rng rng(seed);
    for (int attempt = 0; attempt < 16; ++attempt) {
      a_.resize(n);
      for (auto& a : a_) {
        a.resize(kDim);
        for (int j = 0; j < kDim; ++j) a[j] = uniform_double(rng);
      }
      Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(kDim, kDim);
      for (const auto& a : a_) gram.noalias() += a * a.transpose();
      if (Eigen::FullPivLU<Eigen::MatrixXd>(gram).isInvertible()) {
        gram_mean_ = gram / static_cast<double>(n);
        break;
      }
      a_.clear();
    }
    if (a_.empty()) throw std::runtime_error("sum_nonconvex: design generation failed");

    b_.resize(kDim);
    for (int j = 0; j < kDim; ++j) b_[j] = uniform_double(rng);

    // per diagonal slot: exactly half the components get +1.1, half -1.1
    diag_.assign(n, Eigen::VectorXd::Zero(kDim));
    std::vector<int> order(n);
    for (int j = 0; j < kDim; ++j) {
      for (int i = 0; i < n; ++i) order[i] = i;
      shuffle_indices(order, rng);
      for (int i = 0; i < n; ++i) diag_[order[i]][j] = i < n / 2 ? 1.1 : -1.1;
    }
    if (nonconvex_shift) {
      for (auto& d : diag_) d[0] -= 0.1;
    }

    Eigen::MatrixXd mean_quad = gram_mean_;
    Eigen::VectorXd diag_mean = Eigen::VectorXd::Zero(kDim);
    for (const auto& d : diag_) diag_mean += d;
    mean_quad += (diag_mean / static_cast<double>(n)).asDiagonal().toDenseMatrix();

    const Eigen::MatrixXd hessian = 2.0 * mean_quad;
    const Eigen::VectorXd star = hessian.ldlt().solve(-b_);
    finalize(star, hessian);
    if (!has_indefinite_component()) {
      throw std::runtime_error("sum_nonconvex: no individually non-convex component");
    }
  }

  double eval(const Eigen::VectorXd& theta, int i) const override {
    const double quad = std::pow(a_[i].dot(theta), 2) +
                        theta.dot(diag_[i].asDiagonal() * theta);
    return quad + b_.dot(theta);
  }

  void grad(const Eigen::VectorXd& theta, int i, Eigen::VectorXd& out) const override {
    out = (2.0 * a_[i].dot(theta)) * a_[i];
    out.array() += 2.0 * diag_[i].array() * theta.array();
    out += b_;
  }

 private:
  bool has_indefinite_component() const {
    for (int i = 0; i < n_; ++i) {
      const Eigen::MatrixXd h =
          2.0 * (a_[i] * a_[i].transpose() +
                 Eigen::MatrixXd(diag_[i].asDiagonal()));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
      if (es.eigenvalues()[0] < 0.0 && es.eigenvalues()[dim_ - 1] > 0.0) return true;
    }
    return false;
  }

  std::vector<Eigen::VectorXd> a_;
  std::vector<Eigen::VectorXd> diag_;
  Eigen::VectorXd b_;
  Eigen::MatrixXd gram_mean_;
};

}  // namespace

std::shared_ptr<const ObjectiveModel> make_quadratic_scalar(const Eigen::VectorXd& b) {
  return std::make_shared<QuadraticScalarObjective>(b);
}

std::shared_ptr<const ObjectiveModel> make_logistic_ridge(const Eigen::MatrixXd& X,
                                                          const Eigen::VectorXd& y) {
  return std::make_shared<LogisticRidgeObjective>(X, y);
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> synthetic_logistic_data(
    int n, int p, double flip_prob, std::uint64_t seed) {
  Rng rng(seed);
  NormalSampler normal;
  Eigen::MatrixXd X(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) X(i, j) = normal(rng);
    const double norm = X.row(i).norm();
    if (norm > 0.0) X.row(i) /= norm;
  }
  Eigen::VectorXd planted(p);
  for (int j = 0; j < p; ++j) planted[j] = normal(rng);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    y[i] = X.row(i).dot(planted) >= 0.0 ? 1.0 : -1.0;
    if (uniform_double(rng) < flip_prob) y[i] = -y[i];
  }
  return {X, y};
}

std::shared_ptr<const ObjectiveModel> make_sum_nonconvex(int n, std::uint64_t seed,
                                                         bool nonconvex_shift) {
  return std::make_shared<SumNonconvexObjective>(n, seed, nonconvex_shift);
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> solve_theta_star(const ObjectiveModel& m) {
  const double residual = m.full_gradient(m.theta_star()).norm();
  if (residual > 1e-8) {
    throw std::runtime_error("solve_theta_star: stored minimizer fails gradient check");
  }
  return {m.theta_star(), m.hessian_at_star()};
}

}  // namespace walksgd
