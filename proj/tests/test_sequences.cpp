#include <doctest.h>

#include <map>
#include <memory>
#include <set>

#include "walksgd/fixtures.hpp"
#include "walksgd/sequences.hpp"

using namespace walksgd;

TEST_CASE("single shuffle replays one permutation forever") {
  InputSequence seq = InputSequence::make_single_shuffle(3, 42);
  std::vector<int> first_epoch;
  for (int i = 0; i < 3; ++i) first_epoch.push_back(seq.next());
  CHECK(std::set<int>(first_epoch.begin(), first_epoch.end()).size() == 3);
  for (int epoch = 0; epoch < 4; ++epoch) {
    for (int i = 0; i < 3; ++i) CHECK(seq.next() == first_epoch[i]);
  }
}

TEST_CASE("random shuffle covers every epoch and reshuffles") {
  InputSequence seq = InputSequence::make_random_shuffle(6, 9);
  for (int epoch = 0; epoch < 50; ++epoch) {
    std::set<int> seen;
    for (int i = 0; i < 6; ++i) seen.insert(seq.next());
    CHECK(seen.size() == 6);
  }
}

TEST_CASE("random shuffle hits all permutations uniformly (seeded 3-sigma)") {
  const int n = 5;
  const int epochs = 10000;
  InputSequence seq = InputSequence::make_random_shuffle(n, 1234);
  std::map<std::vector<int>, int> counts;
  for (int e = 0; e < epochs; ++e) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = seq.next();
    ++counts[perm];
  }
  CHECK(counts.size() == 120);
  const double expected = epochs / 120.0;
  const double sigma = std::sqrt(epochs * (1.0 / 120) * (119.0 / 120));
  for (const auto& [perm, c] : counts) {
    CHECK(std::abs(c - expected) <= 3.0 * sigma);
  }
}

TEST_CASE("chain walk with the rank-one kernel is independent sampling") {
  Eigen::VectorXd pi(3);
  pi << 0.2, 0.3, 0.5;
  auto kernel = std::make_shared<TransitionKernel>(iid_kernel(pi));
  InputSequence seq = InputSequence::make_chain_walk(kernel, 5);
  const Eigen::VectorXd freq = visit_frequencies(seq, 200000);
  for (int i = 0; i < 3; ++i) CHECK(freq[i] == doctest::Approx(pi[i]).epsilon(0.02));
}

TEST_CASE("non-backtracking walk on a cycle rotates deterministically") {
  auto g = std::make_shared<Graph>(Graph::cycle(7));
  InputSequence seq = InputSequence::make_nbrw_walk(g, 3);
  const int first = seq.next();
  const int second = seq.next();
  const int direction = (second - first + 7) % 7;
  CHECK((direction == 1 || direction == 6));
  int prev = second;
  for (int k = 0; k < 40; ++k) {
    const int cur = seq.next();
    CHECK((cur - prev + 7) % 7 == direction);
    prev = cur;
  }
}

TEST_CASE("non-backtracking walk never returns except at leaves") {
  auto g = std::make_shared<Graph>(fixtures::g1());
  InputSequence seq = InputSequence::make_nbrw_walk(g, 11);
  int prev = -1;
  int cur = seq.next();
  for (int k = 0; k < 20000; ++k) {
    const int nxt = seq.next();
    if (prev >= 0 && g->degree(cur) > 1) CHECK(nxt != prev);
    CHECK(g->has_edge(cur, nxt));
    prev = cur;
    cur = nxt;
  }

  // leaves force an immediate return
  auto star = std::make_shared<Graph>(Graph::star(3));
  InputSequence walk = InputSequence::make_nbrw_walk(star, 2);
  int a = walk.next();
  for (int k = 0; k < 100; ++k) {
    const int b = walk.next();
    if (star->degree(a) == 1) CHECK(b == 0);
    a = b;
  }
}

TEST_CASE("visit frequencies: shuffles are exactly uniform at epoch multiples") {
  InputSequence seq = InputSequence::make_single_shuffle(6, 4);
  const Eigen::VectorXd freq = visit_frequencies(seq, 6 * 10);
  for (int i = 0; i < 6; ++i) CHECK(freq[i] == doctest::Approx(1.0 / 6).epsilon(1e-15));
}

TEST_CASE("visit frequencies of walks converge to the degree distribution") {
  const auto g2 = std::make_shared<Graph>(fixtures::g2());
  const Eigen::VectorXd target = degree_distribution(*g2);

  auto srw = std::make_shared<TransitionKernel>(srw_kernel(*g2));
  InputSequence walk = InputSequence::make_chain_walk(srw, 17);
  const Eigen::VectorXd f1 = visit_frequencies(walk, 1000000);
  CHECK((f1 - target).cwiseAbs().maxCoeff() <= 0.01);

  InputSequence nb = InputSequence::make_nbrw_walk(g2, 18);
  const Eigen::VectorXd f2 = visit_frequencies(nb, 1000000);
  CHECK((f2 - target).cwiseAbs().maxCoeff() <= 0.01);
}

TEST_CASE("identical seeds give identical emission streams") {
  auto kernel = std::make_shared<TransitionKernel>(mhrw_kernel(fixtures::g1()));
  InputSequence a = InputSequence::make_chain_walk(kernel, 77);
  InputSequence b = InputSequence::make_chain_walk(kernel, 77);
  for (int k = 0; k < 5000; ++k) CHECK(a.next() == b.next());

  InputSequence c = a.clone_with_seed(99);
  InputSequence d = a.clone_with_seed(99);
  for (int k = 0; k < 5000; ++k) CHECK(c.next() == d.next());
}

TEST_CASE("mini-batch shuffles partition each epoch") {
  SUBCASE("divisible") {
    InputSequence seq = InputSequence::make_minibatch_random_shuffle(12, 4, 5);
    for (int epoch = 0; epoch < 20; ++epoch) {
      std::set<int> seen;
      for (int b = 0; b < 3; ++b) {
        const auto& batch = seq.next_batch();
        CHECK(batch.size() == 4);
        seen.insert(batch.begin(), batch.end());
      }
      CHECK(seen.size() == 12);
    }
  }
  SUBCASE("short final batch when n % S != 0") {
    InputSequence seq = InputSequence::make_minibatch_single_shuffle(10, 4, 5);
    std::set<int> seen;
    CHECK(seq.next_batch().size() == 4);
    CHECK(seq.next_batch().size() == 4);
    const auto& last = seq.next_batch();
    CHECK(last.size() == 2);
  }
}

TEST_CASE("mini-batch iid batches are uniform S-subsets") {
  InputSequence seq = InputSequence::make_minibatch_iid(6, 2, 31);
  std::map<std::pair<int, int>, int> counts;
  const int draws = 30000;
  for (int k = 0; k < draws; ++k) {
    auto batch = seq.next_batch();
    CHECK(batch.size() == 2);
    CHECK(batch[0] != batch[1]);
    std::pair<int, int> key{std::min(batch[0], batch[1]), std::max(batch[0], batch[1])};
    ++counts[key];
  }
  CHECK(counts.size() == 15);
  const double expected = draws / 15.0;
  const double sigma = std::sqrt(draws * (1.0 / 15) * (14.0 / 15));
  for (const auto& [key, c] : counts) CHECK(std::abs(c - expected) <= 4.0 * sigma);
}

TEST_CASE("mini-batch weights average to the uniform vector") {
  const int n = 4, S = 2;
  const double p = uniform_batch_probability(n, S);
  CHECK(p == doctest::Approx(1.0 / 6).epsilon(1e-12));

  Eigen::VectorXd v13 = minibatch_weight({1, 3}, n, S, p);
  CHECK(v13[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(v13[3] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(v13[0] == 0.0);

  Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
  const std::vector<std::vector<int>> batches = {{0, 1}, {0, 2}, {0, 3},
                                                 {1, 2}, {1, 3}, {2, 3}};
  for (const auto& b : batches) mean += minibatch_weight(b, n, S, p);
  mean /= static_cast<double>(batches.size());
  for (int i = 0; i < n; ++i) CHECK(mean[i] == doctest::Approx(0.25).epsilon(1e-12));

  SUBCASE("S = 1 recovers single-sample weights") {
    Eigen::VectorXd v = minibatch_weight({2}, n, 1, 1.0 / n);
    CHECK(v[2] == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("S = n is the full gradient") {
    Eigen::VectorXd v = minibatch_weight({0, 1, 2, 3}, n, n, 1.0);
    for (int i = 0; i < n; ++i) CHECK(v[i] == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("zero-probability batches are rejected") {
    CHECK_THROWS_AS(minibatch_weight({0, 1}, n, S, 0.0), std::invalid_argument);
  }
}
