#ifndef WALKSGD_SEQUENCES_HPP
#define WALKSGD_SEQUENCES_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "walksgd/graph.hpp"
#include "walksgd/kernels.hpp"
#include "walksgd/rng.hpp"

namespace walksgd {

enum class SequenceKind {
  iid,
  chain_walk,
  nbrw_walk,
  single_shuffle,
  random_shuffle,
  minibatch_iid,
  minibatch_single_shuffle,
  minibatch_random_shuffle,
};

const char* to_string(SequenceKind kind);

/// Seeded generator of indices in [0, n) (or batches of them) driving the
/// stochastic-gradient iterations and the Monte-Carlo covariance estimators.
/// Owns private RNG state: one instance per thread; replicas are made with
/// clone_with_seed.
class InputSequence {
 public:
  static InputSequence make_iid(Eigen::VectorXd pi, std::uint64_t seed);
  static InputSequence make_chain_walk(std::shared_ptr<const TransitionKernel> kernel,
                                       std::uint64_t seed);
  static InputSequence make_nbrw_walk(std::shared_ptr<const Graph> graph,
                                      std::uint64_t seed);
  static InputSequence make_single_shuffle(int n, std::uint64_t seed);
  static InputSequence make_random_shuffle(int n, std::uint64_t seed);
  static InputSequence make_minibatch_iid(int n, int batch_size, std::uint64_t seed);
  static InputSequence make_minibatch_single_shuffle(int n, int batch_size,
                                                     std::uint64_t seed);
  static InputSequence make_minibatch_random_shuffle(int n, int batch_size,
                                                     std::uint64_t seed);

  SequenceKind kind() const { return kind_; }
  int state_space_size() const { return n_; }
  int batch_size() const { return batch_size_; }
  bool emits_batches() const { return batch_size_ > 0; }
  std::uint64_t seed() const { return seed_; }

  /// Claimed limiting occupancy distribution over [0, n).
  const Eigen::VectorXd& limiting_dist() const { return limiting_; }

  /// Next index (single-sample kinds only).
  int next();
  /// Next batch (mini-batch kinds only). The returned view is valid until the
  /// following call. Shuffled kinds emit a short final batch when n % S != 0.
  const std::vector<int>& next_batch();

  /// Fresh copy with re-seeded RNG and reset walk state. The fixed
  /// permutation of a single-shuffle sequence is part of its identity and is
  /// kept; everything else restarts.
  InputSequence clone_with_seed(std::uint64_t seed) const;

  /// True for Markov-walk kinds that need burn-in before stationarity.
  bool is_chain_walk() const {
    return kind_ == SequenceKind::chain_walk || kind_ == SequenceKind::nbrw_walk;
  }

 private:
  InputSequence() = default;
  void reset(std::uint64_t seed);
  void refill_epoch();

  SequenceKind kind_ = SequenceKind::iid;
  int n_ = 0;
  int batch_size_ = 0;  // 0 for single-sample kinds
  std::uint64_t seed_ = 0;
  Eigen::VectorXd limiting_;
  Rng rng_;

  // iid / chain walk
  std::shared_ptr<const TransitionKernel> kernel_;
  // cumulative rows of kernel_->P (a single row of cumulative pi for iid)
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> cumulative_;
  int current_ = -1;

  // non-backtracking walk
  std::shared_ptr<const Graph> graph_;
  int previous_ = -1;

  // shuffles
  std::vector<int> permutation_;
  std::vector<int> fixed_permutation_;
  int epoch_pos_ = 0;

  std::vector<int> batch_;
};

/// v(B): sparse reweighting vector with E[v(B)] = 1/n under the batch law.
/// For batch probability p and effective size |B|: v_i = 1 / (|B| * C(n,S) * p)
/// on members of B, zero elsewhere.
Eigen::VectorXd minibatch_weight(const std::vector<int>& batch, int n, int batch_size,
                                 double batch_probability);

/// Uniform S-subset probability 1 / C(n, S).
double uniform_batch_probability(int n, int batch_size);

/// Empirical occupancy over the first t emissions (per-index occupancy for
/// batch kinds). Advances a copy of the sequence.
Eigen::VectorXd visit_frequencies(const InputSequence& seq, long t);

}  // namespace walksgd

#endif  // WALKSGD_SEQUENCES_HPP
