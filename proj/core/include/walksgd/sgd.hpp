#ifndef WALKSGD_SGD_HPP
#define WALKSGD_SGD_HPP

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "walksgd/objectives.hpp"
#include "walksgd/sequences.hpp"

namespace walksgd {

/// gamma_t = t^{-alpha} (alpha in (1/2, 1]) or a constant.
struct StepSchedule {
  enum class Kind { poly, constant };
  Kind kind = Kind::poly;
  double alpha = 0.9;
  double gamma = 0.1;

  double at(long t) const {
    return kind == Kind::poly ? std::pow(static_cast<double>(t), -alpha) : gamma;
  }
  /// steps[t] = gamma_t for t = 1..T (index 0 unused).
  std::vector<double> precompute(long T) const;

  static StepSchedule poly(double alpha) { return {Kind::poly, alpha, 0.0}; }
  static StepSchedule constant(double gamma) { return {Kind::constant, 0.0, gamma}; }
};

enum class Algorithm { sgd, nasgd, adam };

Algorithm algorithm_from_string(const std::string& s);
const char* to_string(Algorithm a);

struct AdamParams {
  double alpha1 = 0.9;
  double alpha2 = 0.999;
  double eps = 1e-8;
};

/// One projected step of the reweighted iteration
///   theta <- Proj(theta - gamma * grad F(theta, i) / (n pi_i)).
/// `reweight` holds 1 / (n pi_i); pass an empty vector for uniform pi.
void sgd_step(Eigen::VectorXd& theta, int i, double gamma, const ObjectiveModel& model,
              const Eigen::VectorXd& reweight, Eigen::VectorXd& scratch);

/// Batch step theta <- Proj(theta - gamma * sum_{i in B} v_i grad F(theta, i))
/// with the mean weights v_i = 1/|B| of the uniform batch laws.
void sgd_step_batch(Eigen::VectorXd& theta, const std::vector<int>& batch, double gamma,
                    const ObjectiveModel& model, Eigen::VectorXd& scratch);

struct NesterovState {
  Eigen::VectorXd theta;
  Eigen::VectorXd lookahead;  // u_t
  double beta = 0.5;
};

/// theta' = u - gamma grad G(u, i); u' = theta' + beta (theta' - theta).
void nasgd_step(NesterovState& state, int i, double gamma, const ObjectiveModel& model,
                const Eigen::VectorXd& reweight, Eigen::VectorXd& scratch);

struct AdamState {
  Eigen::VectorXd theta;
  Eigen::VectorXd m;
  Eigen::VectorXd v;
  long step = 0;
  AdamParams params;
};

/// Bias-corrected first/second moment update with elementwise square root.
void adam_step(AdamState& state, int i, double gamma, const ObjectiveModel& model,
               const Eigen::VectorXd& reweight, Eigen::VectorXd& scratch);

struct SgdRunConfig {
  Algorithm algorithm = Algorithm::sgd;
  double nesterov_beta = 0.5;
  AdamParams adam;
  Eigen::VectorXd theta0;  // empty -> zero vector
};

/// Runs one trajectory for `horizon` steps, invoking `on_checkpoint` at every
/// t listed in `checkpoints` (sorted ascending). `steps` must hold gamma_t at
/// index t for t = 1..horizon. Returns the final iterate.
Eigen::VectorXd run_sgd(const ObjectiveModel& model, InputSequence seq,
                        std::span<const double> steps, long horizon,
                        const SgdRunConfig& cfg,
                        std::span<const long> checkpoints = {},
                        const std::function<void(long, const Eigen::VectorXd&)>&
                            on_checkpoint = nullptr);

/// Reweighting vector 1 / (n pi_i); empty when pi is uniform.
Eigen::VectorXd reweight_for(const Eigen::VectorXd& pi);

/// Checkpoint grid ceil(10^{k/8}), deduplicated, capped at T.
std::vector<long> log_checkpoints(long T);

}  // namespace walksgd

#endif  // WALKSGD_SGD_HPP
