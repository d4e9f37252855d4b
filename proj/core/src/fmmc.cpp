#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "walksgd/kernels.hpp"

namespace walksgd {

namespace {

// Orthogonal projection onto the affine set {symmetric, graph support,
// rows sum to 1}, alternated with clipping to the nonnegative orthant.
// Free coordinates are the diagonal and one weight per undirected edge; the
// Gram matrix of the row-sum constraints in that parameterization is
// I + (D + A) / 2.
class FeasibleProjector {
 public:
  explicit FeasibleProjector(const Graph& g)
      : n_(g.num_nodes()), mask_(Eigen::MatrixXd::Zero(n_, n_)) {
    Eigen::MatrixXd gram = Eigen::MatrixXd::Identity(n_, n_);
    for (int i = 0; i < n_; ++i) {
      mask_(i, i) = 1.0;
      gram(i, i) += 0.5 * g.degree(i);
      for (int j : g.neighbors(i)) {
        mask_(i, j) = 1.0;
        gram(i, j) += 0.5;
      }
    }
    gram_solver_.compute(gram);
  }

  Eigen::MatrixXd operator()(Eigen::MatrixXd P, int max_rounds = 400) const {
    for (int round = 0; round < max_rounds; ++round) {
      P = (0.5 * (P + P.transpose())).cwiseProduct(mask_);
      const Eigen::VectorXd lambda = gram_solver_.solve(P.rowwise().sum() -
                                                        Eigen::VectorXd::Ones(n_));
      for (int i = 0; i < n_; ++i) {
        P(i, i) -= lambda[i];
        for (int j = 0; j < n_; ++j) {
          if (j != i && mask_(i, j) > 0.0) P(i, j) -= 0.5 * (lambda[i] + lambda[j]);
        }
      }
      const double clip = -P.minCoeff();
      P = P.cwiseMax(0.0);
      if (clip < 1e-15 && (P.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-13) {
        break;
      }
    }
    return P;
  }

 private:
  int n_;
  Eigen::MatrixXd mask_;
  Eigen::PartialPivLU<Eigen::MatrixXd> gram_solver_;
};

double symmetric_slem(const Eigen::MatrixXd& P) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (P + P.transpose()),
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("fmmc: eigensolver failed");
  const int n = static_cast<int>(P.rows());
  return std::max(es.eigenvalues()[n - 2], -es.eigenvalues()[0]);
}

bool feasible(const Eigen::MatrixXd& P) {
  return P.minCoeff() >= 0.0 &&
         (P.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-12;
}

}  // namespace

TransitionKernel fmmc_kernel(const Graph& g, const FmmcOptions& opts) {
  const int n = g.num_nodes();
  const FeasibleProjector project(g);

  Eigen::MatrixXd P = mhrw_kernel(g).P;  // feasible start, already doubly stochastic
  const double initial = symmetric_slem(P);
  Eigen::MatrixXd best = P;
  double best_mu = initial;

  for (int k = 1; k <= opts.max_iters; ++k) {
    Eigen::VectorXd u;
    const Eigen::MatrixXd sym = 0.5 * (P + P.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    if (es.info() != Eigen::Success) throw std::runtime_error("fmmc: eigensolver failed");
    const double hi = es.eigenvalues()[n - 2];
    const double lo = -es.eigenvalues()[0];
    Eigen::MatrixXd subgrad;
    if (hi >= lo) {
      u = es.eigenvectors().col(n - 2);
      subgrad = u * u.transpose();
    } else {
      u = es.eigenvectors().col(0);
      subgrad = -(u * u.transpose());
    }
    P = project(P - (opts.step_c / std::sqrt(static_cast<double>(k))) * subgrad);
    if (feasible(P)) {
      const double mu = symmetric_slem(P);
      if (mu < best_mu) {
        best_mu = mu;
        best = P;
      }
    }
  }

  TransitionKernel k;
  k.P = best;
  // symmetric rows-sum-1 matrix; clean residual asymmetry from projection
  k.P = 0.5 * (k.P + k.P.transpose());
  for (int i = 0; i < n; ++i) {
    k.P(i, i) += 1.0 - k.P.row(i).sum();  // absorb roundoff dust (<= 1e-13)
    if (k.P(i, i) < 0.0 && k.P(i, i) > -1e-12) k.P(i, i) = 0.0;
  }
  k.pi = Eigen::VectorXd::Constant(n, 1.0 / n);
  k.support = g.edges();
  k.reversible = true;
  k.doubly_stochastic = true;
  k.warning = initial - best_mu < opts.tol && initial > opts.tol;
  return k;
}

}  // namespace walksgd
