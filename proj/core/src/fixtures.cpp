#include "walksgd/fixtures.hpp"

namespace walksgd::fixtures {

namespace {

Eigen::MatrixXd from_rows(int n, const double* data) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = data[i * n + j];
  return m;
}

}  // namespace

Graph g1() {
  return Graph(8, {{0, 1}, {0, 2}, {0, 5}, {1, 4}, {2, 3},
                   {2, 5}, {2, 6}, {3, 4}, {3, 7}, {6, 7}});
}

Graph g2() {
  return Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 3}, {3, 4}});
}

Eigen::MatrixXd p1_g1() {
  const double d3 = 1.0 / 3, d4 = 0.25, d6 = 1.0 / 6, d12 = 1.0 / 12;
  const double rows[64] = {
      d12, d3,  d4,  0,   0,   d3,      0,    0,
      d3,  d6,  0,   0,   0.5, 0,       0,    0,
      d4,  0,   0,   d4,  0,   d4,      d4,   0,
      0,   0,   d4,  d12, d3,  0,       0,    d3,
      0,   0.5, 0,   d3,  d6,  0,       0,    0,
      d3,  0,   d4,  0,   0,   5.0 / 12, 0,   0,
      0,   0,   d4,  0,   0,   0,       0.25, 0.5,
      0,   0,   0,   d3,  0,   0,       0.5,  d6};
  return from_rows(8, rows);
}

Eigen::MatrixXd p2_g1() {
  const double rows[64] = {
      0,    0.35, 0.25, 0,    0,    0.4,  0,    0,
      0.35, 0.02, 0,    0,    0.63, 0,    0,    0,
      0.25, 0,    0,    0.25, 0,    0.25, 0.25, 0,
      0,    0,    0.25, 0,    0.37, 0,    0,    0.38,
      0,    0.63, 0,    0.37, 0,    0,    0,    0,
      0.4,  0,    0.25, 0,    0,    0.35, 0,    0,
      0,    0,    0.25, 0,    0,    0,    0.13, 0.62,
      0,    0,    0,    0.38, 0,    0,    0.62, 0};
  return from_rows(8, rows);
}

Eigen::MatrixXd p3_g1() {
  const double rows[64] = {
      0.13, 0.42, 0.17, 0,    0,    0.28, 0,    0,
      0.42, 0.1,  0,    0,    0.48, 0,    0,    0,
      0.17, 0,    0,    0.06, 0,    0.32, 0.45, 0,
      0,    0,    0.06, 0.14, 0.46, 0,    0,    0.34,
      0,    0.48, 0,    0.46, 0.06, 0,    0,    0,
      0.28, 0,    0.32, 0,    0,    0.4,  0,    0,
      0,    0,    0.45, 0,    0,    0,    0.09, 0.46,
      0,    0,    0,    0.34, 0,    0,    0.46, 0.2};
  return from_rows(8, rows);
}

Eigen::MatrixXd p1_g2() {
  const double d3 = 1.0 / 3, d6 = 1.0 / 6;
  const double rows[25] = {
      0,    0.25, 0.25, 0.25, 0.25,
      0.25, d6,   0,    0.25, d3,
      0.25, 0,    0.5,  0.25, 0,
      0.25, 0.25, 0.25, 0,    0.25,
      0.25, d3,   0,    0.25, d6};
  return from_rows(5, rows);
}

Eigen::MatrixXd p2_g2() {
  const double rows[25] = {
      0,    0.25, 0.25, 0.25, 0.25,
      0.25, 0,    0,    0.25, 0.5,
      0.25, 0,    0.5,  0.25, 0,
      0.25, 0.25, 0.25, 0,    0.25,
      0.25, 0.5,  0,    0.25, 0};
  return from_rows(5, rows);
}

Eigen::MatrixXd p3_g2() {
  const double rows[25] = {
      0.09, 0.25, 0.33, 0.08, 0.25,
      0.25, 0.25, 0,    0.25, 0.25,
      0.33, 0,    0.34, 0.33, 0,
      0.08, 0.25, 0.33, 0.09, 0.25,
      0.25, 0.25, 0,    0.25, 0.25};
  return from_rows(5, rows);
}

Eigen::VectorXd quadratic_b_g1() {
  Eigen::VectorXd b(8);
  b << 7.1, 6.5, 1.6, 9.8, 3.0, 5.7, 8.6, 1.4;
  return b;
}

Eigen::VectorXd quadratic_b_g2() {
  Eigen::VectorXd b(5);
  b << 2.4, 8.3, 5.9, 9.5, 3.4;
  return b;
}

Graph standin62() {
  // frozen seed; ~2.9 average degree plus a ring of chords keeps the walk
  // well connected without being close to complete
  return Graph::random_connected(62, 90, 0x5eed62ULL);
}

}  // namespace walksgd::fixtures
