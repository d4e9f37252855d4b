#include "walksgd/clt.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "walksgd/rng.hpp"

namespace walksgd {

const char* to_string(CltRegime r) {
  switch (r) {
    case CltRegime::decaying_nonaveraged: return "decaying_nonaveraged";
    case CltRegime::decaying_averaged: return "decaying_averaged";
    case CltRegime::constant_averaged: return "constant_averaged";
  }
  return "unknown";
}

void CltSpec::validate() const {
  if (H.rows() != H.cols() || Sigma.rows() != Sigma.cols() || H.rows() != Sigma.rows()) {
    throw std::invalid_argument("clt spec: dimension mismatch");
  }
  if ((H - H.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("clt spec: H must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  const double lambda_min = es.eigenvalues()[0];
  if (lambda_min <= 0.0) throw std::invalid_argument("clt spec: H not positive definite");
  if (!constant_step) {
    if (alpha <= 0.5 || alpha > 1.0) {
      throw std::invalid_argument("clt spec: alpha must lie in (1/2, 1]");
    }
    if (alpha == 1.0 && lambda_min <= 0.5) {
      throw std::invalid_argument("clt spec: alpha = 1 requires H - I/2 positive definite");
    }
  }
}

CltCovariance solve_lyapunov(const CltSpec& spec) {
  spec.validate();
  const int d = static_cast<int>(spec.H.rows());
  const double shift = spec.alpha == 1.0 ? 1.0 : 0.0;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(spec.H);
  if (es.info() != Eigen::Success) throw std::runtime_error("solve_lyapunov: eigensolver failed");
  const Eigen::MatrixXd& Q = es.eigenvectors();
  const Eigen::VectorXd& lambda = es.eigenvalues();

  const Eigen::MatrixXd sigma_rot = Q.transpose() * spec.Sigma * Q;
  Eigen::MatrixXd v_rot(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double denom = lambda[i] + lambda[j] - shift;
      if (denom <= 1e-12) {
        throw std::runtime_error("solve_lyapunov: non-Hurwitz spectrum");
      }
      v_rot(i, j) = sigma_rot(i, j) / denom;
    }
  }

  CltCovariance out;
  out.V = Q * v_rot * Q.transpose();
  out.V = 0.5 * (out.V + out.V.transpose());
  out.regime = CltRegime::decaying_nonaveraged;
  out.alpha = spec.alpha;
  const Eigen::MatrixXd shifted =
      spec.H - 0.5 * shift * Eigen::MatrixXd::Identity(d, d);
  out.residual =
      (shifted * out.V + out.V * shifted.transpose() - spec.Sigma).norm();
  return out;
}

CltCovariance averaged_covariance(const CltSpec& spec) {
  spec.validate();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(spec.H);
  if (!lu.isInvertible()) throw std::runtime_error("averaged_covariance: singular H");
  const Eigen::MatrixXd h_inv = lu.inverse();

  CltCovariance out;
  out.V = h_inv * spec.Sigma * h_inv.transpose();
  out.V = 0.5 * (out.V + out.V.transpose());
  out.regime = spec.constant_step ? CltRegime::constant_averaged
                                  : CltRegime::decaying_averaged;
  out.alpha = spec.constant_step ? 0.0 : spec.alpha;
  out.residual = (spec.H * out.V * spec.H.transpose() - spec.Sigma).norm();
  return out;
}

CltCheckReport empirical_clt_check(const std::vector<Eigen::VectorXd>& scaled_errors,
                                   const CltCovariance& clt, int num_weights,
                                   std::uint64_t weight_seed) {
  const int R = static_cast<int>(scaled_errors.size());
  if (R < 30) throw std::invalid_argument("empirical_clt_check: need at least 30 replicas");
  const int d = static_cast<int>(clt.V.rows());

  Eigen::MatrixXd second_moment = Eigen::MatrixXd::Zero(d, d);
  for (const auto& e : scaled_errors) second_moment += e * e.transpose();
  second_moment /= static_cast<double>(R);

  CltCheckReport report;
  report.replicas = R;
  report.relative_frobenius_error =
      (second_moment - clt.V).norm() / std::max(clt.V.norm(), 1e-300);

  // per-coordinate z-scores of the empirical variance against V_ii
  // (variance of a chi^2 mean: 2 V_ii^2 / R)
  report.z_scores.resize(d);
  for (int i = 0; i < d; ++i) {
    const double var_hat = second_moment(i, i);
    const double se = clt.V(i, i) * std::sqrt(2.0 / R);
    report.z_scores[i] = se > 0.0 ? (var_hat - clt.V(i, i)) / se
                                  : (var_hat == 0.0 ? 0.0 : INFINITY);
  }

  Rng rng(derive_seed(weight_seed, 0xc1));
  NormalSampler normal;
  for (int k = 0; k < num_weights; ++k) {
    Eigen::VectorXd w(d);
    for (int i = 0; i < d; ++i) w[i] = normal(rng);
    const double band = 2.0 * std::sqrt(std::max(0.0, w.dot(clt.V * w)));
    int inside = 0;
    for (const auto& e : scaled_errors) {
      if (std::abs(w.dot(e)) <= band) ++inside;
    }
    report.coverage.push_back(static_cast<double>(inside) / R);
  }
  return report;
}

}  // namespace walksgd
