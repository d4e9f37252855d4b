#include "walksgd/sequences.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace walksgd {

const char* to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::iid: return "iid";
    case SequenceKind::chain_walk: return "chain_walk";
    case SequenceKind::nbrw_walk: return "nbrw_walk";
    case SequenceKind::single_shuffle: return "single_shuffle";
    case SequenceKind::random_shuffle: return "random_shuffle";
    case SequenceKind::minibatch_iid: return "minibatch_iid";
    case SequenceKind::minibatch_single_shuffle: return "minibatch_single_shuffle";
    case SequenceKind::minibatch_random_shuffle: return "minibatch_random_shuffle";
  }
  return "unknown";
}

namespace {

Eigen::VectorXd cumulative_of(const Eigen::VectorXd& p) {
  Eigen::VectorXd cum(p.size());
  double acc = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    acc += p[i];
    cum[i] = acc;
  }
  cum[p.size() - 1] = 1.0;
  return cum;
}

}  // namespace

InputSequence InputSequence::make_iid(Eigen::VectorXd pi, std::uint64_t seed) {
  InputSequence s;
  s.kind_ = SequenceKind::iid;
  s.n_ = static_cast<int>(pi.size());
  s.limiting_ = std::move(pi);
  s.cumulative_.resize(1, s.n_);
  s.cumulative_.row(0) = cumulative_of(s.limiting_).transpose();
  s.reset(seed);
  return s;
}

InputSequence InputSequence::make_chain_walk(
    std::shared_ptr<const TransitionKernel> kernel, std::uint64_t seed) {
  InputSequence s;
  s.kind_ = SequenceKind::chain_walk;
  s.kernel_ = std::move(kernel);
  s.n_ = s.kernel_->size();
  s.limiting_ = s.kernel_->pi;
  s.cumulative_.resize(s.n_, s.n_);
  for (int i = 0; i < s.n_; ++i) {
    s.cumulative_.row(i) = cumulative_of(s.kernel_->P.row(i).transpose()).transpose();
  }
  s.reset(seed);
  return s;
}

InputSequence InputSequence::make_nbrw_walk(std::shared_ptr<const Graph> graph,
                                            std::uint64_t seed) {
  InputSequence s;
  s.kind_ = SequenceKind::nbrw_walk;
  s.graph_ = std::move(graph);
  s.n_ = s.graph_->num_nodes();
  s.limiting_ = degree_distribution(*s.graph_);
  s.reset(seed);
  return s;
}

InputSequence InputSequence::make_single_shuffle(int n, std::uint64_t seed) {
  InputSequence s;
  s.kind_ = SequenceKind::single_shuffle;
  s.n_ = n;
  s.limiting_ = Eigen::VectorXd::Constant(n, 1.0 / n);
  s.fixed_permutation_.resize(n);
  std::iota(s.fixed_permutation_.begin(), s.fixed_permutation_.end(), 0);
  Rng perm_rng(derive_seed(seed, 0x51));
  shuffle_indices(s.fixed_permutation_, perm_rng);
  s.reset(seed);
  return s;
}

InputSequence InputSequence::make_random_shuffle(int n, std::uint64_t seed) {
  InputSequence s;
  s.kind_ = SequenceKind::random_shuffle;
  s.n_ = n;
  s.limiting_ = Eigen::VectorXd::Constant(n, 1.0 / n);
  s.reset(seed);
  return s;
}

InputSequence InputSequence::make_minibatch_iid(int n, int batch_size,
                                                std::uint64_t seed) {
  if (batch_size < 1 || batch_size > n) {
    throw std::invalid_argument("sequence: batch size out of range");
  }
  InputSequence s;
  s.kind_ = SequenceKind::minibatch_iid;
  s.n_ = n;
  s.batch_size_ = batch_size;
  s.limiting_ = Eigen::VectorXd::Constant(n, 1.0 / n);
  s.permutation_.resize(n);
  std::iota(s.permutation_.begin(), s.permutation_.end(), 0);
  s.reset(seed);
  return s;
}

InputSequence InputSequence::make_minibatch_single_shuffle(int n, int batch_size,
                                                           std::uint64_t seed) {
  if (batch_size < 1 || batch_size > n) {
    throw std::invalid_argument("sequence: batch size out of range");
  }
  InputSequence s = make_single_shuffle(n, seed);
  s.kind_ = SequenceKind::minibatch_single_shuffle;
  s.batch_size_ = batch_size;
  return s;
}

InputSequence InputSequence::make_minibatch_random_shuffle(int n, int batch_size,
                                                           std::uint64_t seed) {
  if (batch_size < 1 || batch_size > n) {
    throw std::invalid_argument("sequence: batch size out of range");
  }
  InputSequence s = make_random_shuffle(n, seed);
  s.kind_ = SequenceKind::minibatch_random_shuffle;
  s.batch_size_ = batch_size;
  return s;
}

void InputSequence::reset(std::uint64_t seed) {
  seed_ = seed;
  rng_.seed(seed);
  epoch_pos_ = 0;
  previous_ = -1;
  switch (kind_) {
    case SequenceKind::iid:
      current_ = -1;
      break;
    case SequenceKind::minibatch_iid:
      current_ = -1;
      permutation_.resize(n_);
      std::iota(permutation_.begin(), permutation_.end(), 0);
      break;
    case SequenceKind::chain_walk:
      // start in the stationary law
      current_ = sample_cumulative(cumulative_of(limiting_), uniform_double(rng_));
      break;
    case SequenceKind::nbrw_walk:
      current_ = static_cast<int>(uniform_below(rng_, n_));
      break;
    case SequenceKind::single_shuffle:
    case SequenceKind::minibatch_single_shuffle:
      permutation_ = fixed_permutation_;
      break;
    case SequenceKind::random_shuffle:
    case SequenceKind::minibatch_random_shuffle:
      permutation_.resize(n_);
      std::iota(permutation_.begin(), permutation_.end(), 0);
      refill_epoch();
      break;
  }
}

void InputSequence::refill_epoch() {
  epoch_pos_ = 0;
  if (kind_ == SequenceKind::random_shuffle ||
      kind_ == SequenceKind::minibatch_random_shuffle) {
    shuffle_indices(permutation_, rng_);
  }
}

int InputSequence::next() {
  switch (kind_) {
    case SequenceKind::iid:
      return sample_cumulative(cumulative_.data(), n_, uniform_double(rng_));
    case SequenceKind::chain_walk:
      current_ = sample_cumulative(cumulative_.data() + static_cast<long>(current_) * n_,
                                   n_, uniform_double(rng_));
      return current_;
    case SequenceKind::nbrw_walk: {
      const auto& nbrs = graph_->neighbors(current_);
      const int d = static_cast<int>(nbrs.size());
      int target;
      if (previous_ < 0 || d == 1) {
        target = nbrs[uniform_below(rng_, d)];
      } else {
        int pick = static_cast<int>(uniform_below(rng_, d - 1));
        // skip the neighbor we came from
        int idx = 0;
        target = -1;
        for (int v : nbrs) {
          if (v == previous_) continue;
          if (idx == pick) {
            target = v;
            break;
          }
          ++idx;
        }
      }
      previous_ = current_;
      current_ = target;
      return current_;
    }
    case SequenceKind::single_shuffle:
    case SequenceKind::random_shuffle: {
      if (epoch_pos_ == n_) refill_epoch();
      return permutation_[epoch_pos_++];
    }
    default:
      throw std::logic_error("sequence: next() called on a batch sequence");
  }
}

const std::vector<int>& InputSequence::next_batch() {
  switch (kind_) {
    case SequenceKind::minibatch_iid: {
      // partial Fisher-Yates: first S entries become a uniform S-subset
      for (int i = 0; i < batch_size_; ++i) {
        const int j = i + static_cast<int>(uniform_below(rng_, n_ - i));
        std::swap(permutation_[i], permutation_[j]);
      }
      batch_.assign(permutation_.begin(), permutation_.begin() + batch_size_);
      return batch_;
    }
    case SequenceKind::minibatch_single_shuffle:
    case SequenceKind::minibatch_random_shuffle: {
      if (epoch_pos_ >= n_) refill_epoch();
      const int take = std::min(batch_size_, n_ - epoch_pos_);
      batch_.assign(permutation_.begin() + epoch_pos_,
                    permutation_.begin() + epoch_pos_ + take);
      epoch_pos_ += take;
      return batch_;
    }
    default:
      throw std::logic_error("sequence: next_batch() called on a single-sample sequence");
  }
}

InputSequence InputSequence::clone_with_seed(std::uint64_t seed) const {
  // the fixed permutation of single-shuffle kinds is part of the identity and
  // survives the copy; reset() restores every other piece of stream state
  InputSequence s = *this;
  s.reset(seed);
  return s;
}

double uniform_batch_probability(int n, int batch_size) {
  double log_c = std::lgamma(n + 1.0) - std::lgamma(batch_size + 1.0) -
                 std::lgamma(n - batch_size + 1.0);
  return std::exp(-log_c);
}

Eigen::VectorXd minibatch_weight(const std::vector<int>& batch, int n, int batch_size,
                                 double batch_probability) {
  if (batch_probability <= 0.0) {
    throw std::invalid_argument("minibatch_weight: zero-probability batch");
  }
  const double log_c = std::lgamma(n + 1.0) - std::lgamma(batch_size + 1.0) -
                       std::lgamma(n - batch_size + 1.0);
  const double scale =
      1.0 / (static_cast<double>(batch.size()) * std::exp(log_c) * batch_probability);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  for (int i : batch) v[i] += scale;
  return v;
}

Eigen::VectorXd visit_frequencies(const InputSequence& seq, long t) {
  if (t < 1) throw std::invalid_argument("visit_frequencies: horizon must be >= 1");
  InputSequence replay = seq.clone_with_seed(seq.seed());
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(replay.state_space_size());
  double total = 0.0;
  for (long s = 0; s < t; ++s) {
    if (replay.emits_batches()) {
      for (int i : replay.next_batch()) {
        counts[i] += 1.0;
        total += 1.0;
      }
    } else {
      counts[replay.next()] += 1.0;
      total += 1.0;
    }
  }
  return counts / total;
}

}  // namespace walksgd
