#include "walksgd/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace walksgd {

namespace {

void write_rows(std::ofstream& out, const Eigen::MatrixXd& m) {
  out << std::setprecision(17);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("io: cannot open " + path + " for writing");
  return out;
}

}  // namespace

void save_kernel(const TransitionKernel& k, const std::string& csv_path) {
  auto out = open_out(csv_path);
  out << k.size() << '\n';
  write_rows(out, k.P);

  nlohmann::json side;
  side["reversible"] = k.reversible;
  side["doubly_stochastic"] = k.doubly_stochastic;
  side["warning"] = k.warning;
  side["pi"] = std::vector<double>(k.pi.data(), k.pi.data() + k.pi.size());
  nlohmann::json support = nlohmann::json::array();
  for (auto [i, j] : k.support) support.push_back({i, j});
  side["support"] = support;
  auto sout = open_out(csv_path + ".json");
  sout << side.dump(2) << '\n';
}

TransitionKernel load_kernel(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("io: cannot open " + csv_path);
  int n = 0;
  in >> n;
  if (n <= 0) throw std::runtime_error("io: bad kernel header in " + csv_path);
  TransitionKernel k;
  k.P.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      char sep;
      if (j > 0) in >> sep;
      if (!(in >> k.P(i, j))) {
        throw std::runtime_error("io: truncated kernel matrix in " + csv_path);
      }
    }
  }

  std::ifstream sin(csv_path + ".json");
  if (sin) {
    nlohmann::json side;
    sin >> side;
    k.reversible = side.value("reversible", false);
    k.doubly_stochastic = side.value("doubly_stochastic", false);
    k.warning = side.value("warning", false);
    const auto pi = side.value("pi", std::vector<double>{});
    if (static_cast<int>(pi.size()) == n) {
      k.pi = Eigen::Map<const Eigen::VectorXd>(pi.data(), n);
    }
    if (side.contains("support")) {
      for (const auto& e : side["support"]) {
        k.support.emplace_back(e[0].get<int>(), e[1].get<int>());
      }
    }
  }
  if (k.pi.size() != n) k.pi = stationary_distribution(k.P);
  if (k.support.empty()) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) k.support.emplace_back(i, j);
  }
  return k;
}

void save_matrix_csv(const Eigen::MatrixXd& m, const std::string& path) {
  auto out = open_out(path);
  write_rows(out, m);
}

Eigen::MatrixXd load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("io: cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::runtime_error("io: ragged matrix in " + path);
    }
    rows.push_back(std::move(row));
  }
  Eigen::MatrixXd m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  return m;
}

void save_asym_cov(const AsymCov& cov, const std::string& base_path) {
  save_matrix_csv(cov.sigma, base_path + ".csv");
  nlohmann::json meta;
  meta["method"] = cov.method == CovMethod::exact ? "exact" : "monte_carlo";
  meta["horizon"] = cov.horizon;
  meta["replicas"] = cov.replicas;
  meta["seed"] = cov.seed;
  meta["dim"] = cov.dim();
  auto out = open_out(base_path + ".json");
  out << meta.dump(2) << '\n';
}

void save_clt_covariance(const CltCovariance& clt, const std::string& base_path) {
  save_matrix_csv(clt.V, base_path + ".csv");
  nlohmann::json meta;
  meta["regime"] = to_string(clt.regime);
  meta["alpha"] = clt.alpha;
  meta["residual"] = clt.residual;
  auto out = open_out(base_path + ".json");
  out << meta.dump(2) << '\n';
}

}  // namespace walksgd
