#ifndef WALKSGD_EXPERIMENT_HPP
#define WALKSGD_EXPERIMENT_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "walksgd/avcov.hpp"
#include "walksgd/clt.hpp"
#include "walksgd/sgd.hpp"

namespace walksgd {

/// One stochastic input inside an experiment. `kernel` names the walk kernel
/// for chain_walk ("srw", "mhrw", "mhrw_peskun", "fmmc", "iid_uniform").
struct SequenceSpec {
  std::string name;
  std::string kind;
  std::string kernel;
  std::uint64_t seed = 0;
  int batch_size = 1;
};

struct GraphSpec {
  // "fixture:g1" | "fixture:g2" | "fixture:standin62" | "file:<path>" |
  // "path:<n>" | "cycle:<n>" | "complete:<n>"
  std::string source;
  int random_n = 0;  // or a random connected graph when random_n > 0
  int random_extra_edges = 0;
  std::uint64_t random_seed = 0;
};

struct ObjectiveSpec {
  std::string kind;  // quadratic_scalar | logistic_ridge | sum_nonconvex
  std::vector<double> b;  // quadratic data; empty -> graph fixture probe
  std::string b_rule;     // "fixture" | "degrees" | "" (explicit b)
  int features = 108;
  double flip_prob = 0.1;
  bool nonconvex_shift = false;
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  GraphSpec graph;
  ObjectiveSpec objective;
  StepSchedule schedule = StepSchedule::poly(0.9);
  long horizon = 100000;
  int replicas = 100;
  Algorithm algorithm = Algorithm::sgd;
  double nesterov_beta = 0.5;
  AdamParams adam;
  std::vector<double> theta0;  // empty -> zeros
  std::uint64_t seed = 1;
  std::vector<SequenceSpec> sequences;
  std::string output_dir;
  bool write_replica_traces = false;  // also dump <name>.replicas.csv

  static ExperimentConfig from_json_file(const std::string& path);
  static ExperimentConfig from_json_text(const std::string& text);
  std::string canonical_json() const;
  /// FNV-1a of the canonical form; stamped into every output.
  std::string hash() const;
};

struct TraceRow {
  long t = 0;
  double mse = 0.0;
  double scaled_mse = 0.0;
  double mse_stderr = 0.0;
};

/// Mean trace of one sequence over all replicas, on the log checkpoint grid.
/// `replica_mse[r][c]` keeps the per-replica squared errors behind each row.
struct SgdTrace {
  std::string name;
  std::vector<TraceRow> rows;
  std::vector<std::vector<double>> replica_mse;
  std::uint64_t seed = 0;
  std::string config_hash;
};

struct ExperimentResult {
  std::vector<SgdTrace> traces;
  Eigen::VectorXd theta_star;
  std::string config_hash;
};

/// Materialized experiment pieces shared by the runners.
class ExperimentContext {
 public:
  explicit ExperimentContext(const ExperimentConfig& cfg);

  const Graph& graph() const { return *graph_; }
  std::shared_ptr<const Graph> graph_ptr() const { return graph_; }
  const ObjectiveModel& objective() const { return *objective_; }
  std::shared_ptr<const ObjectiveModel> objective_ptr() const { return objective_; }
  /// Kernel by name, built and cached on first use (thread-safe).
  std::shared_ptr<const TransitionKernel> kernel(const std::string& name) const;
  /// Instantiate a sequence spec (seed combined with the experiment seed).
  InputSequence make_sequence(const SequenceSpec& spec, std::uint64_t replica) const;
  /// grad G(theta*, .) rows: the reweighted gradient test function of a spec.
  TestFunction gradient_function(const SequenceSpec& spec) const;
  /// Exact long-run covariance of grad G(theta*, .) under the sequence's law
  /// (zero for shuffles, variance for iid, fundamental-matrix otherwise).
  AsymCov input_covariance(const SequenceSpec& spec) const;

 private:
  const ExperimentConfig cfg_;
  std::shared_ptr<const Graph> graph_;
  std::shared_ptr<const ObjectiveModel> objective_;
  mutable std::mutex kernel_mutex_;
  mutable std::map<std::string, std::shared_ptr<const TransitionKernel>> kernels_;
};

/// Runs every (sequence, replica) pair, aggregates mean traces, and writes
/// <output_dir>/<sequence>.csv (schema t,mse,scaled_mse) plus metadata.json
/// and a gnuplot script when output_dir is set.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct OrderingReport {
  std::string name_a;
  std::string name_b;
  AsymCov sigma_a;
  AsymCov sigma_b;
  LoewnerVerdict input_verdict = LoewnerVerdict::incomparable;
  CltCovariance v_a;
  CltCovariance v_b;
  double trace_v_a = 0.0;
  double trace_v_b = 0.0;
  double plateau_a = 0.0;  // empirical scaled MSE at the horizon
  double plateau_b = 0.0;

  std::string to_text() const;
};

/// Full comparison pipeline for a two-sequence config: exact input
/// covariances at grad G(theta*, .), their Loewner verdict, the solved
/// limiting covariances, and an empirical scaled-MSE comparison.
OrderingReport run_ordering_report(const ExperimentConfig& cfg);

/// Writes a gnuplot script plotting the written CSV traces (log-log MSE and
/// linear scaled-MSE panels).
void emit_plot_script(const std::vector<std::string>& csv_paths,
                      const std::vector<std::string>& labels,
                      const std::string& path);

struct SlemTableRow {
  std::string label;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool gated = true;  // rows without a reference claim are informational
  bool pass = false;
  bool warning = false;
};

struct SlemTable {
  std::vector<SlemTableRow> fixture_rows;      // transcribed reference matrices
  std::vector<SlemTableRow> constructed_rows;  // kernels built by this library
  std::string to_text() const;
  bool all_gated_pass() const;
};

/// Eigen-SLEMs of the six embedded reference matrices against their published
/// values, plus the SLEMs of the kernels this library constructs on the same
/// graphs (Metropolis, dominance-modified, subgradient minimum-SLEM).
SlemTable reproduce_slem_table(const FmmcOptions& fmmc_opts = {});

}  // namespace walksgd

#endif  // WALKSGD_EXPERIMENT_HPP
