#include "walksgd/avcov.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "walksgd/rng.hpp"

namespace walksgd {

TestFunction TestFunction::random_gaussian(int n, int d, std::uint64_t seed) {
  Rng rng(seed);
  NormalSampler normal;
  TestFunction g;
  g.values.resize(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) g.values(i, j) = normal(rng);
  return g;
}

void AsymCov::validate() const {
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::runtime_error("asym cov: not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()[0] < -1e-8) {
    throw std::runtime_error("asym cov: not positive semidefinite");
  }
}

AsymCov exact_asym_cov(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi,
                       const TestFunction& g) {
  const int n = static_cast<int>(P.rows());
  if (g.states() != n) throw std::invalid_argument("exact_asym_cov: size mismatch");

  const Eigen::MatrixXd fundamental_system =
      Eigen::MatrixXd::Identity(n, n) - P + Eigen::VectorXd::Ones(n) * pi.transpose();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(fundamental_system);
  if (!lu.isInvertible()) {
    throw std::runtime_error(
        "exact_asym_cov: fundamental system singular (chain not irreducible?)");
  }
  const Eigen::MatrixXd Z = lu.inverse();

  const Eigen::VectorXd mu = g.values.transpose() * pi;
  const Eigen::MatrixXd centered =
      g.values - Eigen::VectorXd::Ones(n) * mu.transpose();
  const Eigen::MatrixXd weighted = pi.asDiagonal() * centered;
  const Eigen::MatrixXd cross =
      centered.transpose() * pi.asDiagonal() *
      ((Z - Eigen::MatrixXd::Identity(n, n)) * centered);

  AsymCov out;
  out.sigma = centered.transpose() * weighted + cross + cross.transpose();
  out.sigma = 0.5 * (out.sigma + out.sigma.transpose());
  out.method = CovMethod::exact;
  return out;
}

AsymCov exact_asym_cov(const TransitionKernel& k, const TestFunction& g) {
  return exact_asym_cov(k.P, k.pi, g);
}

AsymCov exact_asym_cov(const EdgeKernel& k, const TestFunction& g) {
  TestFunction lifted;
  lifted.values.resize(k.size(), g.dim());
  for (int s = 0; s < k.size(); ++s) {
    lifted.values.row(s) = g.values.row(k.states[s].second);
  }
  return exact_asym_cov(k.P, k.pi, lifted);
}

namespace {

bool is_shuffle_kind(SequenceKind kind) {
  return kind == SequenceKind::single_shuffle || kind == SequenceKind::random_shuffle ||
         kind == SequenceKind::minibatch_single_shuffle ||
         kind == SequenceKind::minibatch_random_shuffle;
}

// The centered endpoint sum is accumulated through per-index occupancy
// weights, Delta = sum_i (w_i - E w_i) g(i): one counter update per step, and
// a shuffle at a whole number of epochs yields coefficients that are exact
// floating-point zeros.
Eigen::MatrixXd replica_outer(const InputSequence& prototype, const TestFunction& g,
                              long horizon, std::uint64_t replica_seed) {
  InputSequence seq = prototype.clone_with_seed(replica_seed);
  const int n = seq.state_space_size();
  const int d = g.dim();

  if (seq.is_chain_walk()) {
    const long burn = horizon / 10;
    for (long s = 0; s < burn; ++s) seq.next();
  }

  Eigen::VectorXd delta = Eigen::VectorXd::Zero(d);
  if (seq.emits_batches()) {
    Eigen::VectorXd weight = Eigen::VectorXd::Zero(n);
    for (long s = 0; s < horizon; ++s) {
      const auto& batch = seq.next_batch();
      const double w = 1.0 / static_cast<double>(batch.size());
      for (int i : batch) weight[i] += w;
    }
    const Eigen::VectorXd expected =
        static_cast<double>(horizon) * seq.limiting_dist();
    delta = g.values.transpose() * (weight - expected);
  } else {
    std::vector<long> counts(static_cast<std::size_t>(n), 0);
    for (long s = 0; s < horizon; ++s) ++counts[static_cast<std::size_t>(seq.next())];
    Eigen::VectorXd coeff(n);
    if (is_shuffle_kind(seq.kind())) {
      const double per_state = static_cast<double>(horizon) / n;
      for (int i = 0; i < n; ++i) coeff[i] = static_cast<double>(counts[i]) - per_state;
    } else {
      for (int i = 0; i < n; ++i) {
        coeff[i] =
            static_cast<double>(counts[i]) - horizon * seq.limiting_dist()[i];
      }
    }
    delta = g.values.transpose() * coeff;
  }
  return (delta * delta.transpose()) / static_cast<double>(horizon);
}

}  // namespace

AsymCov mc_asym_cov(const InputSequence& seq, const TestFunction& g, long horizon,
                    int replicas, std::uint64_t mc_seed) {
  if (horizon < 1 || replicas < 1) {
    throw std::invalid_argument("mc_asym_cov: horizon and replicas must be >= 1");
  }
  const int d = g.dim();
  std::vector<Eigen::MatrixXd> partial(replicas);

  const unsigned workers =
      std::min<unsigned>(std::thread::hardware_concurrency(), replicas);
  if (workers > 1) {
    std::vector<std::thread> pool;
    std::atomic<int> cursor{0};
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int r = cursor.fetch_add(1); r < replicas; r = cursor.fetch_add(1)) {
          partial[r] = replica_outer(seq, g, horizon,
                                     derive_seed(seq.seed() ^ mc_seed, r));
        }
      });
    }
    for (auto& th : pool) th.join();
  } else {
    for (int r = 0; r < replicas; ++r) {
      partial[r] = replica_outer(seq, g, horizon, derive_seed(seq.seed() ^ mc_seed, r));
    }
  }

  AsymCov out;
  out.sigma = Eigen::MatrixXd::Zero(d, d);
  for (const auto& m : partial) out.sigma += m;  // ordered reduction
  out.sigma /= static_cast<double>(replicas);
  out.method = CovMethod::monte_carlo;
  out.horizon = horizon;
  out.replicas = replicas;
  out.seed = mc_seed;
  if (replicas > 1) {
    double scatter = 0.0;
    for (const auto& m : partial) scatter += (m - out.sigma).squaredNorm();
    out.std_error = std::sqrt(scatter / (replicas - 1)) / std::sqrt(replicas);
  }
  return out;
}

double loewner_default_tol(const AsymCov& a, const AsymCov& b) {
  if (a.method == CovMethod::exact && b.method == CovMethod::exact) return 1e-8;
  return std::max(1e-8, 3.0 * (a.std_error + b.std_error));
}

const char* to_string(LoewnerVerdict v) {
  switch (v) {
    case LoewnerVerdict::ordered: return "ordered";
    case LoewnerVerdict::reverse_ordered: return "reverse_ordered";
    case LoewnerVerdict::incomparable: return "incomparable";
    case LoewnerVerdict::not_ordered: return "not_ordered";
  }
  return "unknown";
}

LoewnerVerdict loewner_leq(const AsymCov& a, const AsymCov& b, double tol) {
  if (a.dim() != b.dim()) throw std::invalid_argument("loewner_leq: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.sigma - a.sigma,
                                                    Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()[0];
  const double hi = es.eigenvalues()[a.dim() - 1];
  if (lo >= -tol) return LoewnerVerdict::ordered;
  if (hi <= tol) return LoewnerVerdict::reverse_ordered;
  return LoewnerVerdict::incomparable;
}

const char* to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::a_more_efficient: return "a_more_efficient";
    case ProbeVerdict::b_more_efficient: return "b_more_efficient";
    case ProbeVerdict::incomparable_on_probe: return "incomparable_on_probe";
  }
  return "unknown";
}

ChainView::ChainView(const TransitionKernel& k)
    : P(k.P), pi(k.pi), node_marginal(k.pi) {
  lift.resize(k.size());
  for (int i = 0; i < k.size(); ++i) lift[i] = i;
}

ChainView::ChainView(const EdgeKernel& k, int num_nodes) : P(k.P), pi(k.pi) {
  lift.resize(k.size());
  node_marginal = Eigen::VectorXd::Zero(num_nodes);
  for (int s = 0; s < k.size(); ++s) {
    lift[s] = k.states[s].second;
    node_marginal[lift[s]] += pi[s];
  }
}

TestFunction ChainView::lifted(const TestFunction& g) const {
  TestFunction out;
  out.values.resize(static_cast<int>(lift.size()), g.dim());
  for (std::size_t s = 0; s < lift.size(); ++s) {
    out.values.row(static_cast<int>(s)) = g.values.row(lift[s]);
  }
  return out;
}

EfficiencyReport efficiency_probe(const ChainView& a, const ChainView& b,
                                  const std::vector<TestFunction>& fns,
                                  double tie_tol) {
  if ((a.node_marginal - b.node_marginal).cwiseAbs().maxCoeff() > 1e-8) {
    throw std::invalid_argument("efficiency_probe: limiting distributions differ");
  }
  EfficiencyReport report;
  bool a_wins = false;
  bool b_wins = false;
  for (const auto& g : fns) {
    if (g.dim() != 1) {
      throw std::invalid_argument("efficiency_probe: probe functions must be scalar");
    }
    const double av_a = exact_asym_cov(a.P, a.pi, a.lifted(g)).sigma(0, 0);
    const double av_b = exact_asym_cov(b.P, b.pi, b.lifted(g)).sigma(0, 0);
    report.av_a.push_back(av_a);
    report.av_b.push_back(av_b);
    report.max_gap = std::max(report.max_gap, std::abs(av_a - av_b));
    if (av_a < av_b - tie_tol) a_wins = true;
    if (av_b < av_a - tie_tol) b_wins = true;
  }
  if (a_wins && !b_wins) {
    report.verdict = ProbeVerdict::a_more_efficient;
  } else if (b_wins && !a_wins) {
    report.verdict = ProbeVerdict::b_more_efficient;
  } else {
    report.verdict = ProbeVerdict::incomparable_on_probe;
  }
  return report;
}

AsymCov minibatch_iid_covariance(const TestFunction& g, int batch_size) {
  const int n = g.states();
  const int d = g.dim();
  if (n > 30) throw std::invalid_argument("minibatch_iid_covariance: n too large to enumerate");
  if (batch_size < 1 || batch_size > n) {
    throw std::invalid_argument("minibatch_iid_covariance: bad batch size");
  }
  const Eigen::VectorXd mean =
      g.values.colwise().mean().transpose();

  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(d, d);
  long count = 0;
  std::vector<int> idx(batch_size);
  for (int i = 0; i < batch_size; ++i) idx[i] = i;
  while (true) {
    Eigen::VectorXd value = Eigen::VectorXd::Zero(d);
    for (int i : idx) value += g.values.row(i).transpose();
    value /= static_cast<double>(batch_size);
    acc += (value - mean) * (value - mean).transpose();
    ++count;
    // next combination
    int k = batch_size - 1;
    while (k >= 0 && idx[k] == n - batch_size + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < batch_size; ++j) idx[j] = idx[j - 1] + 1;
  }

  AsymCov out;
  out.sigma = acc / static_cast<double>(count);
  out.method = CovMethod::exact;
  return out;
}

}  // namespace walksgd
