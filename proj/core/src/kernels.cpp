#include "walksgd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace walksgd {

namespace {

bool support_allows(const std::vector<std::pair<int, int>>& support, int i, int j) {
  const auto key = std::make_pair(std::min(i, j), std::max(i, j));
  return std::binary_search(support.begin(), support.end(), key);
}

}  // namespace

void TransitionKernel::validate() const {
  const int n = size();
  if (pi.size() != n) throw std::runtime_error("kernel: pi size mismatch");
  if (P.minCoeff() < 0.0) throw std::runtime_error("kernel: negative entry");
  for (int i = 0; i < n; ++i) {
    if (std::abs(P.row(i).sum() - 1.0) > 1e-12) {
      throw std::runtime_error("kernel: row " + std::to_string(i) + " not stochastic");
    }
  }
  if ((pi.transpose() * P - pi.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::runtime_error("kernel: pi is not stationary");
  }
  if (reversible) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (std::abs(pi[i] * P(i, j) - pi[j] * P(j, i)) > 1e-10) {
          throw std::runtime_error("kernel: detailed balance violated");
        }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && P(i, j) > 0.0 && !support_allows(support, i, j)) {
        throw std::runtime_error("kernel: off-diagonal mass outside support");
      }
}

void EdgeKernel::validate() const {
  const int m = size();
  if (pi.size() != m) throw std::runtime_error("edge kernel: pi size mismatch");
  for (int i = 0; i < m; ++i) {
    if (std::abs(P.row(i).sum() - 1.0) > 1e-12) {
      throw std::runtime_error("edge kernel: row not stochastic");
    }
  }
  if ((pi.transpose() * P - pi.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::runtime_error("edge kernel: pi is not stationary");
  }
}

TransitionKernel srw_kernel(const Graph& g) {
  const int n = g.num_nodes();
  TransitionKernel k;
  k.P = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double inv_d = 1.0 / g.degree(i);
    for (int j : g.neighbors(i)) k.P(i, j) = inv_d;
  }
  k.pi = degree_distribution(g);
  k.support = g.edges();
  k.reversible = true;
  bool regular = true;
  for (int i = 1; i < n; ++i) regular = regular && g.degree(i) == g.degree(0);
  k.doubly_stochastic = regular;
  return k;
}

TransitionKernel mhrw_kernel(const Graph& g) {
  const int n = g.num_nodes();
  TransitionKernel k;
  k.P = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j : g.neighbors(i)) {
      k.P(i, j) = std::min(1.0 / g.degree(i), 1.0 / g.degree(j));
      off += k.P(i, j);
    }
    k.P(i, i) = 1.0 - off;
  }
  k.pi = Eigen::VectorXd::Constant(n, 1.0 / n);
  k.support = g.edges();
  k.reversible = true;
  k.doubly_stochastic = true;
  return k;
}

TransitionKernel peskun_modify(const TransitionKernel& k) {
  const int n = k.size();
  if ((k.P - k.P.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("peskun_modify: kernel is not symmetric");
  }
  TransitionKernel out = k;
  for (auto [i, j] : k.support) {
    const double delta = std::min(out.P(i, i), out.P(j, j));
    if (delta > 0.0) {
      out.P(i, j) += delta;
      out.P(j, i) += delta;
      out.P(i, i) -= delta;
      out.P(j, j) -= delta;
    }
  }
  out.pi = Eigen::VectorXd::Constant(n, 1.0 / n);
  out.reversible = true;
  out.doubly_stochastic = true;
  out.warning = false;
  return out;
}

TransitionKernel iid_kernel(const Eigen::VectorXd& pi) {
  const int n = static_cast<int>(pi.size());
  if (std::abs(pi.sum() - 1.0) > 1e-12 || pi.minCoeff() <= 0.0) {
    throw std::invalid_argument("iid_kernel: pi must be a positive distribution");
  }
  TransitionKernel k;
  k.P = Eigen::VectorXd::Ones(n) * pi.transpose();
  k.pi = pi;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) k.support.emplace_back(i, j);
  k.reversible = true;
  k.doubly_stochastic = (pi.maxCoeff() - pi.minCoeff()) < 1e-15;
  return k;
}

double slem_of_matrix(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi,
                      bool reversible) {
  const int n = static_cast<int>(P.rows());
  if (n < 2) return 0.0;
  std::vector<double> moduli;
  if (reversible) {
    const Eigen::VectorXd s = pi.cwiseSqrt();
    Eigen::MatrixXd sym = s.asDiagonal() * P * s.cwiseInverse().asDiagonal();
    sym = 0.5 * (sym + sym.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    if (es.info() != Eigen::Success) throw std::runtime_error("slem: eigensolver failed");
    for (int i = 0; i < n; ++i) moduli.push_back(std::abs(es.eigenvalues()[i]));
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> es(P);
    if (es.info() != Eigen::Success) throw std::runtime_error("slem: eigensolver failed");
    for (int i = 0; i < n; ++i) moduli.push_back(std::abs(es.eigenvalues()[i]));
  }
  std::sort(moduli.begin(), moduli.end(), std::greater<double>());
  return std::min(1.0, moduli[1]);
}

double slem(const TransitionKernel& k) {
  return slem_of_matrix(k.P, k.pi, k.reversible);
}

EdgeKernel nbrw_edge_kernel(const Graph& g) {
  const int n = g.num_nodes();
  std::vector<std::pair<int, int>> all_states;
  for (int i = 0; i < n; ++i)
    for (int j : g.neighbors(i)) all_states.emplace_back(i, j);
  const int m = static_cast<int>(all_states.size());

  auto state_index = [&all_states](int i, int j) {
    const auto it = std::lower_bound(all_states.begin(), all_states.end(),
                                     std::make_pair(i, j));
    return static_cast<int>(it - all_states.begin());
  };

  // successor states of (k, j): out-edges of j except back to k
  std::vector<std::vector<int>> next(m);
  for (int a = 0; a < m; ++a) {
    const auto [from, at] = all_states[a];
    if (g.degree(at) > 1) {
      for (int l : g.neighbors(at))
        if (l != from) next[a].push_back(state_index(at, l));
    } else {
      next[a].push_back(state_index(at, from));
    }
  }

  // The forward-reachable set of a state is closed; on a cycle it is one of
  // the two rotation orbits, elsewhere it is everything.
  std::vector<char> keep(m, 0);
  std::vector<int> stack{0};
  keep[0] = 1;
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    for (int b : next[a])
      if (!keep[b]) {
        keep[b] = 1;
        stack.push_back(b);
      }
  }

  std::vector<int> kept;
  for (int a = 0; a < m; ++a)
    if (keep[a]) kept.push_back(a);
  const int ms = static_cast<int>(kept.size());
  std::vector<int> dense(m, -1);
  for (int a = 0; a < ms; ++a) dense[kept[a]] = a;

  EdgeKernel ek;
  ek.states.reserve(ms);
  for (int a : kept) ek.states.push_back(all_states[a]);
  ek.P = Eigen::MatrixXd::Zero(ms, ms);
  for (int a = 0; a < ms; ++a) {
    const auto& succ = next[kept[a]];
    const double p = 1.0 / static_cast<double>(succ.size());
    for (int b : succ) ek.P(a, dense[b]) = p;
  }
  // pi'(i -> j) proportional to pi_i / d_i, i.e. uniform over directed edges
  ek.pi = Eigen::VectorXd::Constant(ms, 1.0 / ms);
  return ek;
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& P) {
  const int n = static_cast<int>(P.rows());
  // solve pi^T (I - P) = 0 with sum(pi) = 1 by replacing one equation
  Eigen::MatrixXd A = (Eigen::MatrixXd::Identity(n, n) - P).transpose();
  A.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs[n - 1] = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) {
    throw std::runtime_error("stationary_distribution: balance system is singular");
  }
  return lu.solve(rhs);
}

TransitionKernel kernel_from_matrix(const Eigen::MatrixXd& P) {
  const int n = static_cast<int>(P.rows());
  TransitionKernel k;
  k.P = P;
  k.pi = stationary_distribution(P);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) k.support.emplace_back(i, j);
  bool rev = true;
  for (int i = 0; i < n && rev; ++i)
    for (int j = 0; j < n && rev; ++j)
      rev = std::abs(k.pi[i] * P(i, j) - k.pi[j] * P(j, i)) <= 1e-10;
  k.reversible = rev;
  bool doubly = true;
  for (int j = 0; j < n && doubly; ++j) doubly = std::abs(P.col(j).sum() - 1.0) <= 1e-10;
  k.doubly_stochastic = doubly;
  return k;
}

}  // namespace walksgd
