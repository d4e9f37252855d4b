#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "walksgd/experiment.hpp"
#include "walksgd/fixtures.hpp"

using namespace walksgd;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig tiny_config() {
  return ExperimentConfig::from_json_text(R"({
    "graph": {"source": "fixture:g2"},
    "objective": {"kind": "quadratic_scalar", "b": "degrees"},
    "schedule": {"kind": "poly", "alpha": 0.9},
    "horizon": 2000,
    "replicas": 8,
    "seed": 3,
    "sequences": [
      {"name": "iid", "kind": "iid", "seed": 0},
      {"name": "srw", "kind": "chain_walk", "kernel": "srw", "seed": 0}
    ]
  })");
}

}  // namespace

TEST_CASE("config hash is stable and canonical") {
  const ExperimentConfig a = tiny_config();
  const ExperimentConfig b = tiny_config();
  CHECK(a.hash() == b.hash());

  ExperimentConfig c = tiny_config();
  c.horizon = 2001;
  CHECK(c.hash() != a.hash());
}

TEST_CASE("degenerate run: one step, one replica") {
  ExperimentConfig cfg = tiny_config();
  cfg.horizon = 1;
  cfg.replicas = 1;
  cfg.sequences.resize(1);
  const ExperimentResult result = run_experiment(cfg);
  REQUIRE(result.traces.size() == 1);
  REQUIRE(result.traces[0].rows.size() == 1);
  const TraceRow& row = result.traces[0].rows[0];
  CHECK(row.t == 1);
  CHECK(row.mse >= 0.0);
  CHECK(row.scaled_mse == doctest::Approx(row.mse).epsilon(1e-12));  // gamma_1 = 1
}

TEST_CASE("mean trace equals the arithmetic mean of replica traces") {
  ExperimentConfig cfg = tiny_config();
  cfg.sequences.resize(1);
  const ExperimentResult mean_run = run_experiment(cfg);

  // replicate by hand with single-replica runs at the paired seeds
  ExperimentContext ctx(cfg);
  const auto checkpoints = log_checkpoints(cfg.horizon);
  const auto steps = cfg.schedule.precompute(cfg.horizon);
  const Eigen::VectorXd star = ctx.objective().theta_star();
  std::vector<double> acc(checkpoints.size(), 0.0);
  for (int r = 0; r < cfg.replicas; ++r) {
    std::size_t slot = 0;
    run_sgd(ctx.objective(), ctx.make_sequence(cfg.sequences[0], r), steps,
            cfg.horizon, SgdRunConfig{}, checkpoints,
            [&](long, const Eigen::VectorXd& theta) {
              acc[slot++] += (theta - star).squaredNorm();
            });
  }
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    CHECK(mean_run.traces[0].rows[c].mse ==
          doctest::Approx(acc[c] / cfg.replicas).epsilon(1e-12));
  }
}

TEST_CASE("experiment outputs are byte-identical across reruns") {
  namespace fs = std::filesystem;
  ExperimentConfig cfg = tiny_config();
  cfg.output_dir = "exp_out_a";
  run_experiment(cfg);
  cfg.output_dir = "exp_out_b";
  run_experiment(cfg);

  const std::string a = read_file("exp_out_a/srw.csv");
  const std::string b = read_file("exp_out_b/srw.csv");
  CHECK(a == b);
  CHECK(a.rfind("t,mse,scaled_mse\n", 0) == 0);

  const std::string meta = read_file("exp_out_a/metadata.json");
  CHECK(meta.find(cfg.hash()) != std::string::npos);

  fs::remove_all("exp_out_a");
  fs::remove_all("exp_out_b");
}

TEST_CASE("plot script templating") {
  emit_plot_script({"a.csv", "b.csv"}, {"alpha", ""}, "plot_two.gp");
  const std::string two = read_file("plot_two.gp");
  CHECK(two.find("layout 1,2") != std::string::npos);
  CHECK(two.find("'a.csv' using 1:2") != std::string::npos);
  CHECK(two.find("title 'alpha'") != std::string::npos);
  CHECK(two.find("title 'b'") != std::string::npos);  // empty label defaults

  emit_plot_script({"a.csv", "b.csv", "c.csv", "d.csv"}, {}, "plot_four.gp");
  const std::string four = read_file("plot_four.gp");
  CHECK(four.find("layout 2,2") != std::string::npos);

  CHECK_THROWS(emit_plot_script({}, {}, "plot_none.gp"));
  std::remove("plot_two.gp");
  std::remove("plot_four.gp");
}

TEST_CASE("ordering report: shuffling dominates independent sampling") {
  ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
    "graph": {"source": "fixture:g2"},
    "objective": {"kind": "quadratic_scalar", "b": "fixture"},
    "schedule": {"kind": "poly", "alpha": 0.9},
    "horizon": 20000,
    "replicas": 32,
    "seed": 5,
    "sequences": [
      {"name": "shuffle", "kind": "single_shuffle", "seed": 0},
      {"name": "iid", "kind": "iid", "seed": 0}
    ]
  })");
  const OrderingReport report = run_ordering_report(cfg);
  CHECK(report.sigma_a.sigma.cwiseAbs().maxCoeff() == 0.0);
  CHECK(report.input_verdict == LoewnerVerdict::ordered);
  CHECK(report.trace_v_a == 0.0);
  CHECK(report.trace_v_b > 0.0);
  CHECK(report.plateau_a < report.plateau_b);
  CHECK(report.to_text().find("ordered") != std::string::npos);
}

TEST_CASE("ordering report: a kernel against itself ties") {
  ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
    "graph": {"source": "fixture:g2"},
    "objective": {"kind": "quadratic_scalar", "b": "degrees"},
    "horizon": 1000,
    "replicas": 4,
    "seed": 2,
    "sequences": [
      {"name": "a", "kind": "chain_walk", "kernel": "mhrw", "seed": 0},
      {"name": "b", "kind": "chain_walk", "kernel": "mhrw", "seed": 0}
    ]
  })");
  const OrderingReport report = run_ordering_report(cfg);
  CHECK((report.sigma_a.sigma - report.sigma_b.sigma).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(report.input_verdict == LoewnerVerdict::ordered);  // equal within tolerance
  CHECK(report.trace_v_a == doctest::Approx(report.trace_v_b).epsilon(1e-10));
}

TEST_CASE("ordering report rejects mismatched stationary laws") {
  ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
    "graph": {"source": "fixture:g2"},
    "objective": {"kind": "quadratic_scalar", "b": "degrees"},
    "horizon": 1000,
    "replicas": 4,
    "sequences": [
      {"name": "iid", "kind": "iid", "seed": 0},
      {"name": "srw", "kind": "chain_walk", "kernel": "srw", "seed": 0}
    ]
  })");
  CHECK_THROWS_AS(run_ordering_report(cfg), std::invalid_argument);
}

TEST_CASE("slem table: fixture rows gate, constructed g1 modification does not") {
  const SlemTable table = reproduce_slem_table({600, 1e-3, 0.5});
  REQUIRE(table.fixture_rows.size() == 6);
  for (const auto& row : table.fixture_rows) {
    CHECK(row.gated);
    CHECK(row.pass);
  }
  bool saw_ungated = false;
  for (const auto& row : table.constructed_rows) {
    if (!row.gated) saw_ungated = true;
  }
  CHECK(saw_ungated);
  const std::string text = table.to_text();
  CHECK(text.find("PASS") != std::string::npos);
  CHECK(text.find("not gated") != std::string::npos);
}

TEST_CASE("config errors") {
  CHECK_THROWS(ExperimentConfig::from_json_text(R"({"sequences": []})"));
  ExperimentConfig cfg = tiny_config();
  cfg.sequences[0].kind = "nonsense";
  ExperimentContext ctx(cfg);
  CHECK_THROWS(ctx.make_sequence(cfg.sequences[0], 0));
  cfg.sequences[0].kind = "chain_walk";
  cfg.sequences[0].kernel = "bogus";
  CHECK_THROWS(ctx.kernel("bogus"));
}

TEST_CASE("per-replica traces are retained and optionally written") {
  namespace fs = std::filesystem;
  ExperimentConfig cfg = tiny_config();
  cfg.sequences.resize(1);
  cfg.write_replica_traces = true;
  cfg.output_dir = "exp_out_replicas";
  const ExperimentResult result = run_experiment(cfg);

  const SgdTrace& trace = result.traces[0];
  REQUIRE(trace.replica_mse.size() == static_cast<std::size_t>(cfg.replicas));
  // each mean row is the average of its replica column
  for (std::size_t c = 0; c < trace.rows.size(); ++c) {
    double acc = 0.0;
    for (int r = 0; r < cfg.replicas; ++r) acc += trace.replica_mse[r][c];
    CHECK(trace.rows[c].mse == doctest::Approx(acc / cfg.replicas).epsilon(1e-12));
  }

  const std::string dump = read_file("exp_out_replicas/iid.replicas.csv");
  CHECK(dump.rfind("t,replica,mse\n", 0) == 0);
  // rows = checkpoints x replicas (+ header)
  const auto lines = std::count(dump.begin(), dump.end(), '\n');
  CHECK(lines == static_cast<long>(trace.rows.size()) * cfg.replicas + 1);
  fs::remove_all("exp_out_replicas");
}
