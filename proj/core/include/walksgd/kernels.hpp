#ifndef WALKSGD_KERNELS_HPP
#define WALKSGD_KERNELS_HPP

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "walksgd/graph.hpp"

namespace walksgd {

/// Row-stochastic transition matrix with its stationary distribution and
/// structural flags. Off-diagonal support is restricted to `support`
/// (graph edges). Immutable after construction.
struct TransitionKernel {
  Eigen::MatrixXd P;
  Eigen::VectorXd pi;
  std::vector<std::pair<int, int>> support;  // allowed off-diagonal pairs, i < j
  bool reversible = false;
  bool doubly_stochastic = false;
  bool warning = false;  // set by iterative builders on non-convergence

  int size() const { return static_cast<int>(P.rows()); }

  /// Throws if stochasticity (1e-12), stationarity (1e-10), flagged detailed
  /// balance (1e-10) or the support restriction is violated.
  void validate() const;
};

/// First-order lift of a second-order walk: states are directed pairs (i, j)
/// with positive base transition probability.
struct EdgeKernel {
  std::vector<std::pair<int, int>> states;
  Eigen::MatrixXd P;
  Eigen::VectorXd pi;

  int size() const { return static_cast<int>(P.rows()); }
  void validate() const;
};

/// Simple random walk: uniform over neighbors, stationary d / sum(d).
TransitionKernel srw_kernel(const Graph& g);

/// Metropolis-Hastings walk targeting the uniform distribution:
/// P(i,j) = min(1/d_i, 1/d_j) on edges, residual on the diagonal.
TransitionKernel mhrw_kernel(const Graph& g);

/// Deterministic off-diagonal dominance improvement of a symmetric doubly
/// stochastic kernel: sweeps support pairs in lexicographic order moving
/// delta = min(P_ii, P_jj) from the two diagonals onto the pair.
/// Throws if the input is not symmetric within 1e-10.
TransitionKernel peskun_modify(const TransitionKernel& k);

struct FmmcOptions {
  int max_iters = 2000;
  double tol = 1e-3;    // minimum improvement over the run to count as converged
  double step_c = 0.5;  // subgradient step c / sqrt(k)
};

/// Second-largest eigenvalue modulus minimization over symmetric stochastic
/// matrices supported on the graph, by projected subgradient descent from the
/// Metropolis kernel. Returns the best feasible iterate; sets `warning` when
/// the run never improved by at least `tol`.
TransitionKernel fmmc_kernel(const Graph& g, const FmmcOptions& opts = {});

/// Independent sampling kernel 1 pi^T (every row equals pi).
TransitionKernel iid_kernel(const Eigen::VectorXd& pi);

/// Second largest eigenvalue modulus. Reversible kernels go through the
/// symmetrized form D^{1/2} P D^{-1/2}; general kernels through the complex
/// spectrum.
double slem(const TransitionKernel& k);
double slem_of_matrix(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi,
                      bool reversible);

/// Non-backtracking walk on directed-edge states: from (k, j) move uniformly
/// to (j, l), l != k, or back to (j, k) when j is a leaf. On cycle graphs the
/// edge chain splits into two closed orbits; the state set is restricted to
/// the closed communicating class of the first directed edge.
EdgeKernel nbrw_edge_kernel(const Graph& g);

/// Stationary distribution of an arbitrary irreducible row-stochastic matrix
/// (direct linear solve of the balance equations).
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& P);

/// Wrap a raw matrix: computes pi and detects flags. Support defaults to all
/// off-diagonal pairs.
TransitionKernel kernel_from_matrix(const Eigen::MatrixXd& P);

}  // namespace walksgd

#endif  // WALKSGD_KERNELS_HPP
