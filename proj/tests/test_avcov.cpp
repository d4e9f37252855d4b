#include <doctest.h>

#include <memory>

#include "oracles.hpp"
#include "walksgd/avcov.hpp"
#include "walksgd/fixtures.hpp"

using namespace walksgd;

namespace {

TransitionKernel two_state(double p, double q) {
  Eigen::MatrixXd P(2, 2);
  P << 1.0 - p, p, q, 1.0 - q;
  return kernel_from_matrix(P);
}

TestFunction indicator2() {
  TestFunction g;
  g.values.resize(2, 1);
  g.values << 0.0, 1.0;
  return g;
}

}  // namespace

TEST_CASE("two-state long-run variance matches the closed form") {
  CHECK(exact_asym_cov(two_state(0.5, 0.5), indicator2()).sigma(0, 0) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(exact_asym_cov(two_state(1.0, 1.0), indicator2()).sigma(0, 0) ==
        doctest::Approx(0.0).epsilon(1e-12));
  const double oracle = oracles::two_state_av(0.25, 0.25);
  CHECK(oracle == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(exact_asym_cov(two_state(0.25, 0.25), indicator2()).sigma(0, 0) ==
        doctest::Approx(oracle).epsilon(1e-12));

  // asymmetric case against the closed form as well
  const double av = exact_asym_cov(two_state(0.3, 0.6), indicator2()).sigma(0, 0);
  CHECK(av == doctest::Approx(oracles::two_state_av(0.3, 0.6)).epsilon(1e-12));
}

TEST_CASE("rank-one kernel covariance is the stationary variance") {
  Eigen::VectorXd pi(4);
  pi << 0.1, 0.2, 0.3, 0.4;
  const TestFunction g = TestFunction::random_gaussian(4, 3, 7);
  const AsymCov cov = exact_asym_cov(iid_kernel(pi), g);
  const Eigen::VectorXd mu = g.mean_under(pi);
  const Eigen::MatrixXd centered = g.values - Eigen::VectorXd::Ones(4) * mu.transpose();
  const Eigen::MatrixXd var = centered.transpose() * pi.asDiagonal() * centered;
  CHECK((cov.sigma - var).cwiseAbs().maxCoeff() <= 1e-10);
  cov.validate();
}

TEST_CASE("covariance is invariant under constant shifts") {
  const Graph g1 = fixtures::g1();
  const TransitionKernel k = srw_kernel(g1);
  TestFunction g = TestFunction::random_gaussian(8, 2, 3);
  const AsymCov before = exact_asym_cov(k, g);
  g.values.col(0).array() += 17.0;
  g.values.col(1).array() -= 4.0;
  const AsymCov after = exact_asym_cov(k, g);
  CHECK((before.sigma - after.sigma).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("matrix covariance projects to scalar variances") {
  const TransitionKernel k = mhrw_kernel(fixtures::g2());
  const TestFunction g = TestFunction::random_gaussian(5, 3, 11);
  const AsymCov cov = exact_asym_cov(k, g);
  Rng rng(5);
  NormalSampler normal;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd v(3);
    for (int i = 0; i < 3; ++i) v[i] = normal(rng);
    TestFunction projected;
    projected.values = g.values * v;
    const double scalar = exact_asym_cov(k, projected).sigma(0, 0);
    CHECK(scalar == doctest::Approx(v.dot(cov.sigma * v)).epsilon(1e-9));
  }
}

TEST_CASE("reducible chains are rejected") {
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(4, 4);
  P(0, 1) = P(1, 0) = 1.0;
  P(2, 3) = P(3, 2) = 1.0;
  TestFunction g = TestFunction::random_gaussian(4, 1, 1);
  const Eigen::VectorXd pi = Eigen::VectorXd::Constant(4, 0.25);
  CHECK_THROWS(exact_asym_cov(P, pi, g));
}

TEST_CASE("edge-space covariance of the non-backtracking walk on a cycle is zero") {
  const EdgeKernel ek = nbrw_edge_kernel(Graph::cycle(6));
  const TestFunction g = TestFunction::random_gaussian(6, 2, 9);
  const AsymCov cov = exact_asym_cov(ek, g);
  CHECK(cov.sigma.cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("monte-carlo covariance of shuffles vanishes at epoch multiples") {
  InputSequence seq = InputSequence::make_single_shuffle(5, 21);
  const TestFunction g = TestFunction::random_gaussian(5, 2, 2);
  const AsymCov cov = mc_asym_cov(seq, g, 5 * 200, 4, 1);
  CHECK(cov.sigma.cwiseAbs().maxCoeff() == 0.0);

  // batch weights accumulate 1/S in floating point, so whole epochs cancel
  // only to rounding dust rather than exactly
  InputSequence rr = InputSequence::make_minibatch_random_shuffle(6, 2, 8);
  const TestFunction g6 = TestFunction::random_gaussian(6, 2, 3);
  const AsymCov cov_rr = mc_asym_cov(rr, g6, 3 * 50, 4, 1);
  CHECK(cov_rr.sigma.cwiseAbs().maxCoeff() <= 1e-24);
}

TEST_CASE("monte-carlo covariance at off-epoch horizons obeys the partial-epoch bound") {
  const int n = 6;
  InputSequence seq = InputSequence::make_random_shuffle(n, 13);
  TestFunction g;
  g.values = Eigen::MatrixXd::Zero(n, 1);
  for (int i = 0; i < n; ++i) g.values(i, 0) = static_cast<double>(i % 2);  // in [0,1]
  const long t = n * 100 + 3;
  const AsymCov cov = mc_asym_cov(seq, g, t, 8, 5);
  CHECK(cov.sigma.cwiseAbs().maxCoeff() <= 10.0 * n * n / static_cast<double>(t));
}

TEST_CASE("monte-carlo covariance is seed-reproducible and consistent") {
  auto kernel = std::make_shared<TransitionKernel>(srw_kernel(fixtures::g2()));
  InputSequence seq = InputSequence::make_chain_walk(kernel, 4);
  const TestFunction g = TestFunction::random_gaussian(5, 2, 5);

  const AsymCov a = mc_asym_cov(seq, g, 20000, 8, 3);
  const AsymCov b = mc_asym_cov(seq, g, 20000, 8, 3);
  CHECK((a.sigma - b.sigma).cwiseAbs().maxCoeff() == 0.0);

  // statistically sound consistency check: at R replicas the endpoint
  // estimator has relative error ~ sqrt((rank+1)/R); R = 4000 puts three
  // sigma near 10 percent
  const AsymCov exact = exact_asym_cov(*kernel, g);
  const AsymCov mc = mc_asym_cov(seq, g, 4000, 4000, 7);
  CHECK((mc.sigma - exact.sigma).norm() / exact.sigma.norm() <= 0.12);
}

TEST_CASE("loewner classification") {
  AsymCov zero;
  zero.sigma = Eigen::MatrixXd::Zero(3, 3);
  AsymCov psd;
  psd.sigma = Eigen::MatrixXd::Identity(3, 3);
  CHECK(loewner_leq(zero, psd) == LoewnerVerdict::ordered);
  CHECK(loewner_leq(psd, zero) == LoewnerVerdict::reverse_ordered);
  CHECK(loewner_leq(zero, zero) == LoewnerVerdict::ordered);

  AsymCov mixed;
  mixed.sigma = Eigen::MatrixXd::Identity(3, 3);
  mixed.sigma(0, 0) = -1.0;
  CHECK(loewner_leq(zero, mixed) == LoewnerVerdict::incomparable);

  AsymCov wrong;
  wrong.sigma = Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(loewner_leq(zero, wrong), std::invalid_argument);
}

TEST_CASE("non-backtracking walk dominates the simple walk on a cycle") {
  const Graph c6 = Graph::cycle(6);
  const TransitionKernel srw = srw_kernel(c6);
  const EdgeKernel nbrw = nbrw_edge_kernel(c6);
  const TestFunction g = TestFunction::random_gaussian(6, 3, 77);
  const AsymCov srw_cov = exact_asym_cov(srw, g);
  const AsymCov nbrw_cov = exact_asym_cov(nbrw, g);
  CHECK(loewner_leq(nbrw_cov, srw_cov) == LoewnerVerdict::ordered);
  CHECK(nbrw_cov.sigma.cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("efficiency probe: dominance modification wins on 100 random functions") {
  const Graph g2 = fixtures::g2();
  const TransitionKernel mh = mhrw_kernel(g2);
  const TransitionKernel mod = peskun_modify(mh);
  std::vector<TestFunction> fns;
  for (int k = 0; k < 100; ++k) fns.push_back(TestFunction::random_gaussian(5, 1, 100 + k));
  const EfficiencyReport report = efficiency_probe(ChainView(mod), ChainView(mh), fns);
  CHECK(report.verdict == ProbeVerdict::a_more_efficient);
  for (int k = 0; k < 100; ++k) CHECK(report.av_a[k] <= report.av_b[k] + 1e-10);
}

TEST_CASE("efficiency probe: identical kernels tie to incomparable") {
  const TransitionKernel mh = mhrw_kernel(fixtures::g2());
  std::vector<TestFunction> fns{TestFunction::random_gaussian(5, 1, 1),
                                TestFunction::random_gaussian(5, 1, 2)};
  const EfficiencyReport report = efficiency_probe(ChainView(mh), ChainView(mh), fns);
  CHECK(report.verdict == ProbeVerdict::incomparable_on_probe);
  CHECK(report.max_gap <= 1e-12);
}

TEST_CASE("efficiency probe: non-backtracking vs simple walk with lifting") {
  const Graph g1 = fixtures::g1();
  const ChainView nbrw(nbrw_edge_kernel(g1), g1.num_nodes());
  const ChainView srw(srw_kernel(g1));
  std::vector<TestFunction> fns;
  for (int k = 0; k < 100; ++k) fns.push_back(TestFunction::random_gaussian(8, 1, 500 + k));
  const EfficiencyReport report = efficiency_probe(nbrw, srw, fns);
  CHECK(report.verdict == ProbeVerdict::a_more_efficient);
}

TEST_CASE("efficiency probe rejects mismatched stationary laws") {
  const Graph g1 = fixtures::g1();
  std::vector<TestFunction> fns{TestFunction::random_gaussian(8, 1, 1)};
  CHECK_THROWS_AS(
      efficiency_probe(ChainView(srw_kernel(g1)), ChainView(mhrw_kernel(g1)), fns),
      std::invalid_argument);
}

TEST_CASE("enumerated mini-batch covariance matches the sampling formula") {
  const TestFunction g = TestFunction::random_gaussian(8, 2, 19);
  const int S = 3;
  const AsymCov enumerated = minibatch_iid_covariance(g, S);
  const Eigen::VectorXd mean = g.values.colwise().mean().transpose();
  const Eigen::MatrixXd centered =
      g.values - Eigen::VectorXd::Ones(8) * mean.transpose();
  const Eigen::MatrixXd pop = centered.transpose() * centered / 8.0;
  const Eigen::MatrixXd expected = pop / S * (8.0 - S) / (8.0 - 1.0);
  CHECK((enumerated.sigma - expected).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("default loewner tolerance widens for monte-carlo inputs") {
  auto kernel = std::make_shared<TransitionKernel>(srw_kernel(fixtures::g2()));
  InputSequence seq = InputSequence::make_chain_walk(kernel, 4);
  const TestFunction g = TestFunction::random_gaussian(5, 2, 5);
  const AsymCov exact = exact_asym_cov(*kernel, g);
  const AsymCov mc = mc_asym_cov(seq, g, 5000, 64, 9);
  CHECK(mc.std_error > 0.0);
  CHECK(loewner_default_tol(exact, exact) == 1e-8);
  CHECK(loewner_default_tol(exact, mc) == doctest::Approx(3.0 * mc.std_error));
  // within three standard errors the estimate and the exact matrix tie
  CHECK(loewner_leq(mc, exact, loewner_default_tol(exact, mc)) ==
        LoewnerVerdict::ordered);
}
