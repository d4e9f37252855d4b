#ifndef WALKSGD_FIXTURES_HPP
#define WALKSGD_FIXTURES_HPP

#include <array>

#include <Eigen/Core>

#include "walksgd/graph.hpp"

namespace walksgd::fixtures {

/// 8-node benchmark graph (degrees 3,2,4,3,2,2,2,2).
Graph g1();
/// 5-node benchmark graph (degrees 4,3,2,4,3).
Graph g2();

/// Reference transition matrices on g1/g2: Metropolis walk, its off-diagonal
/// dominance modification, and the minimum-SLEM chain (the last two on g1 are
/// published rounded to two decimals).
Eigen::MatrixXd p1_g1();
Eigen::MatrixXd p2_g1();
Eigen::MatrixXd p3_g1();
Eigen::MatrixXd p1_g2();
Eigen::MatrixXd p2_g2();
Eigen::MatrixXd p3_g2();

/// Reference SLEM values for the six matrices above, in the same order.
constexpr std::array<double, 6> kReferenceSlem = {0.761, 0.868, 0.712,
                                                  0.500, 0.500, 0.408};
/// Exact-rational fixtures are checked at 1e-3; two-decimal ones at 2e-2.
constexpr std::array<double, 6> kReferenceSlemTol = {1e-3, 2e-2, 2e-2,
                                                     1e-3, 1e-3, 2e-2};

/// Quadratic data vectors for the three-kernel comparison experiment, chosen
/// so the exact asymptotic variances of the modified walk, the Metropolis
/// walk and the minimum-SLEM walk are strictly ordered on both graphs.
Eigen::VectorXd quadratic_b_g1();
Eigen::VectorXd quadratic_b_g2();

/// Deterministic 62-node connected stand-in graph for desk-scale experiments.
Graph standin62();

}  // namespace walksgd::fixtures

#endif  // WALKSGD_FIXTURES_HPP
