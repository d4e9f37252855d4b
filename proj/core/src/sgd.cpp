#include "walksgd/sgd.hpp"

#include <cmath>
#include <stdexcept>

namespace walksgd {

std::vector<double> StepSchedule::precompute(long T) const {
  std::vector<double> steps(static_cast<std::size_t>(T) + 1, 0.0);
  for (long t = 1; t <= T; ++t) steps[static_cast<std::size_t>(t)] = at(t);
  return steps;
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "sgd") return Algorithm::sgd;
  if (s == "nasgd") return Algorithm::nasgd;
  if (s == "adam") return Algorithm::adam;
  throw std::invalid_argument("unknown algorithm: " + s);
}

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::sgd: return "sgd";
    case Algorithm::nasgd: return "nasgd";
    case Algorithm::adam: return "adam";
  }
  return "unknown";
}

namespace {

inline void weighted_grad(const ObjectiveModel& model, const Eigen::VectorXd& theta,
                          int i, const Eigen::VectorXd& reweight,
                          Eigen::VectorXd& out) {
  model.grad(theta, i, out);
  if (reweight.size() > 0) out *= reweight[i];
}

}  // namespace

void sgd_step(Eigen::VectorXd& theta, int i, double gamma, const ObjectiveModel& model,
              const Eigen::VectorXd& reweight, Eigen::VectorXd& scratch) {
  weighted_grad(model, theta, i, reweight, scratch);
  theta.noalias() -= gamma * scratch;
  model.projection_box().clamp(theta);
}

void sgd_step_batch(Eigen::VectorXd& theta, const std::vector<int>& batch, double gamma,
                    const ObjectiveModel& model, Eigen::VectorXd& scratch) {
  const double w = gamma / static_cast<double>(batch.size());
  // all batch gradients are evaluated at the step's starting point
  Eigen::VectorXd& at = scratch;
  static thread_local Eigen::VectorXd grad;
  grad.resize(theta.size());
  at = theta;
  for (int i : batch) {
    model.grad(at, i, grad);
    theta.noalias() -= w * grad;
  }
  model.projection_box().clamp(theta);
}

void nasgd_step(NesterovState& state, int i, double gamma, const ObjectiveModel& model,
                const Eigen::VectorXd& reweight, Eigen::VectorXd& scratch) {
  weighted_grad(model, state.lookahead, i, reweight, scratch);
  Eigen::VectorXd next = state.lookahead - gamma * scratch;
  model.projection_box().clamp(next);
  state.lookahead = next + state.beta * (next - state.theta);
  state.theta = std::move(next);
}

void adam_step(AdamState& state, int i, double gamma, const ObjectiveModel& model,
               const Eigen::VectorXd& reweight, Eigen::VectorXd& scratch) {
  weighted_grad(model, state.theta, i, reweight, scratch);
  const auto& p = state.params;
  ++state.step;
  state.m = p.alpha1 * state.m + (1.0 - p.alpha1) * scratch;
  state.v = p.alpha2 * state.v + (1.0 - p.alpha2) * scratch.cwiseProduct(scratch);
  const double c1 = 1.0 - std::pow(p.alpha1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(p.alpha2, static_cast<double>(state.step));
  state.theta.array() -=
      gamma * (state.m.array() / c1) /
      ((state.v.array() / c2).sqrt() + p.eps);
  model.projection_box().clamp(state.theta);
}

Eigen::VectorXd reweight_for(const Eigen::VectorXd& pi) {
  const int n = static_cast<int>(pi.size());
  const double uniform = 1.0 / n;
  if ((pi.array() - uniform).abs().maxCoeff() < 1e-14) return {};
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) {
    if (pi[i] <= 0.0) throw std::invalid_argument("reweight_for: pi must be positive");
    w[i] = 1.0 / (n * pi[i]);
  }
  return w;
}

std::vector<long> log_checkpoints(long T) {
  std::vector<long> out;
  for (int k = 0;; ++k) {
    const long t = static_cast<long>(std::ceil(std::pow(10.0, k / 8.0)));
    if (t > T) break;
    if (out.empty() || out.back() != t) out.push_back(t);
  }
  if (out.empty() || out.back() != T) out.push_back(T);
  return out;
}

Eigen::VectorXd run_sgd(const ObjectiveModel& model, InputSequence seq,
                        std::span<const double> steps, long horizon,
                        const SgdRunConfig& cfg, std::span<const long> checkpoints,
                        const std::function<void(long, const Eigen::VectorXd&)>&
                            on_checkpoint) {
  if (static_cast<long>(steps.size()) < horizon + 1) {
    throw std::invalid_argument("run_sgd: step table shorter than horizon");
  }
  const int d = model.dim();
  Eigen::VectorXd theta =
      cfg.theta0.size() > 0 ? cfg.theta0 : Eigen::VectorXd::Zero(d);
  const Eigen::VectorXd reweight = reweight_for(seq.limiting_dist());
  Eigen::VectorXd scratch(d);

  NesterovState nesterov;
  AdamState adam;
  if (cfg.algorithm == Algorithm::nasgd) {
    nesterov.theta = theta;
    nesterov.lookahead = theta;
    nesterov.beta = cfg.nesterov_beta;
  } else if (cfg.algorithm == Algorithm::adam) {
    adam.theta = theta;
    adam.m = Eigen::VectorXd::Zero(d);
    adam.v = Eigen::VectorXd::Zero(d);
    adam.params = cfg.adam;
  }

  std::size_t next_checkpoint = 0;
  for (long t = 1; t <= horizon; ++t) {
    const double gamma = steps[static_cast<std::size_t>(t)];
    if (seq.emits_batches()) {
      sgd_step_batch(theta, seq.next_batch(), gamma, model, scratch);
    } else {
      const int i = seq.next();
      switch (cfg.algorithm) {
        case Algorithm::sgd:
          sgd_step(theta, i, gamma, model, reweight, scratch);
          break;
        case Algorithm::nasgd:
          nasgd_step(nesterov, i, gamma, model, reweight, scratch);
          theta = nesterov.theta;
          break;
        case Algorithm::adam:
          adam_step(adam, i, gamma, model, reweight, scratch);
          theta = adam.theta;
          break;
      }
    }
    if (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] == t) {
      if (on_checkpoint) on_checkpoint(t, theta);
      ++next_checkpoint;
    }
  }
  return theta;
}

}  // namespace walksgd
