#ifndef WALKSGD_AVCOV_HPP
#define WALKSGD_AVCOV_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "walksgd/kernels.hpp"
#include "walksgd/sequences.hpp"

namespace walksgd {

/// Vector-valued test function on [0, n): row i holds g(i).
struct TestFunction {
  Eigen::MatrixXd values;  // n x d

  int states() const { return static_cast<int>(values.rows()); }
  int dim() const { return static_cast<int>(values.cols()); }
  Eigen::VectorXd mean_under(const Eigen::VectorXd& pi) const {
    return values.transpose() * pi;
  }

  static TestFunction random_gaussian(int n, int d, std::uint64_t seed);
};

enum class CovMethod { exact, monte_carlo };

/// Long-run covariance of the running mean of g along the process,
/// symmetric PSD up to -1e-8 on the smallest eigenvalue.
struct AsymCov {
  Eigen::MatrixXd sigma;
  CovMethod method = CovMethod::exact;
  long horizon = 0;
  int replicas = 0;
  std::uint64_t seed = 0;
  double std_error = 0.0;  // replica-scatter Frobenius standard error (MC only)

  int dim() const { return static_cast<int>(sigma.rows()); }
  void validate() const;
};

/// Exact long-run covariance via the fundamental matrix (I - P + 1 pi^T)^{-1}:
/// with centered Gc and C = Gc^T D_pi (Z - I) Gc,
///   Sigma = Gc^T D_pi Gc + C + C^T.
/// Throws when the fundamental system is singular (reducible chain).
AsymCov exact_asym_cov(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi,
                       const TestFunction& g);
AsymCov exact_asym_cov(const TransitionKernel& k, const TestFunction& g);
/// Edge-space version: node functions are lifted as g(i -> j) = g(j).
AsymCov exact_asym_cov(const EdgeKernel& k, const TestFunction& g);

/// Direct Monte-Carlo estimate: averages (1/t) D_t D_t^T over R independent
/// replicas, D_t the centered partial sum at the horizon. Chain walks discard
/// a burn-in of t/10 steps first. Batch sequences accumulate per-step batch
/// means of g. Deterministic in (seq seed, mc_seed).
AsymCov mc_asym_cov(const InputSequence& seq, const TestFunction& g, long horizon,
                    int replicas, std::uint64_t mc_seed = 0);

enum class LoewnerVerdict { ordered, reverse_ordered, incomparable, not_ordered };

const char* to_string(LoewnerVerdict v);

/// Classifies b.sigma - a.sigma by its spectrum: `ordered` when a <=_L b
/// (lambda_min >= -tol), `reverse_ordered` when b <=_L a, `incomparable`
/// when the spectrum straddles +-tol.
LoewnerVerdict loewner_leq(const AsymCov& a, const AsymCov& b, double tol = 1e-8);

/// Default comparison tolerance: 1e-8 for exact inputs, three Monte-Carlo
/// standard errors when either side is estimated.
double loewner_default_tol(const AsymCov& a, const AsymCov& b);

enum class ProbeVerdict { a_more_efficient, b_more_efficient, incomparable_on_probe };

const char* to_string(ProbeVerdict v);

struct EfficiencyReport {
  std::vector<double> av_a;
  std::vector<double> av_b;
  ProbeVerdict verdict = ProbeVerdict::incomparable_on_probe;
  double max_gap = 0.0;  // largest |av_a - av_b| over the probe set
};

/// Chain usable by the probe: a node kernel or an edge kernel with lifting.
struct ChainView {
  Eigen::MatrixXd P;
  Eigen::VectorXd pi;
  Eigen::VectorXd node_marginal;  // occupancy over [0, n)
  std::vector<int> lift;          // state -> node index

  ChainView(const TransitionKernel& k);  // NOLINT(google-explicit-constructor)
  ChainView(const EdgeKernel& k, int num_nodes);  // NOLINT
  TestFunction lifted(const TestFunction& g) const;
};

/// Per-function exact asymptotic variances of two chains sharing a limiting
/// node distribution (checked at 1e-8), plus an aggregate verdict with ties
/// broken to incomparable_on_probe.
EfficiencyReport efficiency_probe(const ChainView& a, const ChainView& b,
                                  const std::vector<TestFunction>& fns,
                                  double tie_tol = 1e-12);

/// Exact covariance of the batch-mean of g over uniform S-subsets of [0, n),
/// by enumeration of all C(n, S) batches (n <= 30).
AsymCov minibatch_iid_covariance(const TestFunction& g, int batch_size);

}  // namespace walksgd

#endif  // WALKSGD_AVCOV_HPP
