// Command-line front end: kernel construction, SLEM and covariance reports,
// ordering comparisons, SGD experiment runs, and dataset generation.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <json.hpp>

#include "walksgd/experiment.hpp"
#include "walksgd/fixtures.hpp"
#include "walksgd/io.hpp"

namespace {

using namespace walksgd;

Graph resolve_graph(const std::string& source, int random_n, int random_extra,
                    std::uint64_t random_seed) {
  if (source == "fixture:g1" || source == "fixture:G1") return fixtures::g1();
  if (source == "fixture:g2" || source == "fixture:G2") return fixtures::g2();
  if (source == "fixture:standin62") return fixtures::standin62();
  if (source.rfind("file:", 0) == 0) return load_edge_list(source.substr(5));
  if (random_n > 0) return Graph::random_connected(random_n, random_extra, random_seed);
  if (!source.empty()) return load_edge_list(source);
  throw std::runtime_error("no graph given (use --graph or --random-n)");
}

TransitionKernel build_kernel(const Graph& g, const std::string& kind,
                              const FmmcOptions& fmmc_opts) {
  if (kind == "srw") return srw_kernel(g);
  if (kind == "mhrw") return mhrw_kernel(g);
  if (kind == "mhrw_peskun") return peskun_modify(mhrw_kernel(g));
  if (kind == "fmmc") return fmmc_kernel(g, fmmc_opts);
  if (kind == "iid_uniform") {
    return iid_kernel(Eigen::VectorXd::Constant(g.num_nodes(), 1.0 / g.num_nodes()));
  }
  throw std::runtime_error("unknown kernel kind: " + kind);
}

TestFunction resolve_function(const Graph& g, const std::string& spec) {
  if (spec == "degree") {
    TestFunction f;
    f.values = g.degrees();
    return f;
  }
  if (spec.rfind("indicator:", 0) == 0) {
    const int node = std::stoi(spec.substr(10));
    TestFunction f;
    f.values = Eigen::MatrixXd::Zero(g.num_nodes(), 1);
    f.values(node, 0) = 1.0;
    return f;
  }
  if (spec.rfind("random:", 0) == 0) {
    // random:<dim>,<seed>
    const auto rest = spec.substr(7);
    const auto comma = rest.find(',');
    const int d = std::stoi(rest.substr(0, comma));
    const std::uint64_t seed =
        comma == std::string::npos ? 0 : std::stoull(rest.substr(comma + 1));
    return TestFunction::random_gaussian(g.num_nodes(), d, seed);
  }
  if (spec.rfind("csv:", 0) == 0) {
    TestFunction f;
    f.values = load_matrix_csv(spec.substr(4));
    return f;
  }
  throw std::runtime_error("unknown function spec: " + spec);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random-walk SGD toolkit"};
  app.require_subcommand(1);

  std::string graph_source;
  int random_n = 0;
  int random_extra = 0;
  std::uint64_t random_seed = 0;
  auto add_graph_options = [&](CLI::App* cmd) {
    cmd->add_option("--graph", graph_source,
                    "fixture:g1 | fixture:g2 | fixture:standin62 | file:<path>");
    cmd->add_option("--random-n", random_n, "random connected graph: node count");
    cmd->add_option("--random-extra", random_extra, "random graph: chords beyond the tree");
    cmd->add_option("--random-seed", random_seed, "random graph seed");
  };

  // ---- build-kernel ----
  auto* cmd_build = app.add_subcommand("build-kernel", "construct a walk kernel");
  std::string kernel_kind = "mhrw";
  std::string out_path = "kernel.csv";
  FmmcOptions fmmc_opts;
  add_graph_options(cmd_build);
  cmd_build->add_option("--kind", kernel_kind, "srw|mhrw|mhrw_peskun|fmmc|iid_uniform");
  cmd_build->add_option("--out", out_path, "output CSV (flags in .json sidecar)");
  cmd_build->add_option("--fmmc-max-iters", fmmc_opts.max_iters);
  cmd_build->add_option("--fmmc-tol", fmmc_opts.tol);
  cmd_build->add_option("--fmmc-step-c", fmmc_opts.step_c);
  cmd_build->callback([&] {
    const Graph g = resolve_graph(graph_source, random_n, random_extra, random_seed);
    const TransitionKernel k = build_kernel(g, kernel_kind, fmmc_opts);
    k.validate();
    save_kernel(k, out_path);
    std::cout << "wrote " << out_path << " (slem " << std::setprecision(6) << slem(k)
              << (k.warning ? ", non-convergence warning" : "") << ")\n";
  });

  // ---- slem ----
  auto* cmd_slem = app.add_subcommand("slem", "second largest eigenvalue modulus");
  std::string kernel_csv;
  add_graph_options(cmd_slem);
  cmd_slem->add_option("--kernel", kernel_csv, "kernel CSV (else --graph with --kind)");
  cmd_slem->add_option("--kind", kernel_kind, "kernel kind when built from a graph");
  cmd_slem->callback([&] {
    TransitionKernel k =
        !kernel_csv.empty()
            ? load_kernel(kernel_csv)
            : build_kernel(resolve_graph(graph_source, random_n, random_extra,
                                         random_seed),
                           kernel_kind, fmmc_opts);
    std::cout << std::setprecision(10) << slem(k) << '\n';
  });

  // ---- fmmc ----
  auto* cmd_fmmc = app.add_subcommand("fmmc", "minimum-SLEM kernel by projected subgradient");
  std::string fmmc_out;
  add_graph_options(cmd_fmmc);
  cmd_fmmc->add_option("--max-iters", fmmc_opts.max_iters);
  cmd_fmmc->add_option("--tol", fmmc_opts.tol);
  cmd_fmmc->add_option("--step-c", fmmc_opts.step_c);
  cmd_fmmc->add_option("--out", fmmc_out, "optional kernel CSV output");
  cmd_fmmc->callback([&] {
    const Graph g = resolve_graph(graph_source, random_n, random_extra, random_seed);
    const TransitionKernel base = mhrw_kernel(g);
    const TransitionKernel k = fmmc_kernel(g, fmmc_opts);
    std::cout << std::setprecision(6) << "metropolis slem " << slem(base)
              << " -> minimized " << slem(k)
              << (k.warning ? " (non-convergence warning)" : "") << '\n';
    if (!fmmc_out.empty()) save_kernel(k, fmmc_out);
  });

  // ---- av ----
  auto* cmd_av = app.add_subcommand("av", "asymptotic covariance of a test function");
  std::string av_kernel = "srw";
  std::string av_function = "degree";
  std::string av_out;
  bool av_nbrw = false;
  long av_horizon = 0;
  int av_replicas = 20;
  std::uint64_t av_seed = 1;
  add_graph_options(cmd_av);
  cmd_av->add_option("--kind", av_kernel, "kernel kind (ignored with --nbrw)");
  cmd_av->add_flag("--nbrw", av_nbrw, "non-backtracking walk (edge-space exact)");
  cmd_av->add_option("--function", av_function,
                     "degree | indicator:<i> | random:<d>,<seed> | csv:<path>");
  cmd_av->add_option("--mc-horizon", av_horizon, "Monte-Carlo horizon (0 = exact)");
  cmd_av->add_option("--mc-replicas", av_replicas);
  cmd_av->add_option("--seed", av_seed);
  cmd_av->add_option("--out", av_out, "output base path (.csv/.json)");
  cmd_av->callback([&] {
    const Graph g = resolve_graph(graph_source, random_n, random_extra, random_seed);
    const TestFunction f = resolve_function(g, av_function);
    AsymCov cov;
    if (av_horizon > 0) {
      InputSequence seq =
          av_nbrw ? InputSequence::make_nbrw_walk(std::make_shared<Graph>(g), av_seed)
                  : InputSequence::make_chain_walk(
                        std::make_shared<TransitionKernel>(
                            build_kernel(g, av_kernel, fmmc_opts)),
                        av_seed);
      cov = mc_asym_cov(seq, f, av_horizon, av_replicas, av_seed);
    } else if (av_nbrw) {
      cov = exact_asym_cov(nbrw_edge_kernel(g), f);
    } else {
      cov = exact_asym_cov(build_kernel(g, av_kernel, fmmc_opts), f);
    }
    std::cout << std::setprecision(8) << "sigma:\n" << cov.sigma << '\n';
    if (!av_out.empty()) save_asym_cov(cov, av_out);
  });

  // ---- order / run / clt-check ----
  std::string config_path;
  auto* cmd_order = app.add_subcommand("order", "efficiency ordering report (2-sequence config)");
  cmd_order->add_option("--config", config_path, "experiment JSON")->required();
  cmd_order->callback([&] {
    const auto cfg = ExperimentConfig::from_json_file(config_path);
    std::cout << run_ordering_report(cfg).to_text();
  });

  auto* cmd_run = app.add_subcommand("run", "run an SGD experiment from a JSON config");
  cmd_run->add_option("--config", config_path, "experiment JSON")->required();
  cmd_run->callback([&] {
    const auto cfg = ExperimentConfig::from_json_file(config_path);
    const ExperimentResult result = run_experiment(cfg);
    std::cout << "config " << result.config_hash << '\n' << std::setprecision(6);
    for (const auto& trace : result.traces) {
      const auto& last = trace.rows.back();
      std::cout << "  " << std::left << std::setw(24) << trace.name << " t=" << last.t
                << " mse=" << last.mse << " scaled=" << last.scaled_mse << '\n';
    }
    if (!cfg.output_dir.empty()) {
      std::cout << "traces written to " << cfg.output_dir << '\n';
    }
  });

  auto* cmd_clt = app.add_subcommand(
      "clt-check", "compare an SGD ensemble against the solved limit covariance");
  cmd_clt->add_option("--config", config_path, "experiment JSON (first sequence used)")
      ->required();
  cmd_clt->callback([&] {
    const auto cfg = ExperimentConfig::from_json_file(config_path);
    ExperimentContext ctx(cfg);
    const auto& spec = cfg.sequences.front();

    CltSpec clt_spec;
    clt_spec.H = ctx.objective().hessian_at_star();
    clt_spec.Sigma = ctx.input_covariance(spec).sigma;
    clt_spec.alpha =
        cfg.schedule.kind == StepSchedule::Kind::poly ? cfg.schedule.alpha : 0.9;
    const CltCovariance clt = solve_lyapunov(clt_spec);

    const auto steps = cfg.schedule.precompute(cfg.horizon);
    const double gamma_T = steps.back();
    SgdRunConfig run_cfg;
    run_cfg.algorithm = cfg.algorithm;
    std::vector<Eigen::VectorXd> scaled(cfg.replicas);
    const Eigen::VectorXd star = ctx.objective().theta_star();
    for (int r = 0; r < cfg.replicas; ++r) {
      const Eigen::VectorXd theta =
          run_sgd(ctx.objective(), ctx.make_sequence(spec, r), steps, cfg.horizon,
                  run_cfg);
      scaled[r] = (theta - star) / std::sqrt(gamma_T);
    }
    const CltCheckReport report = empirical_clt_check(scaled, clt);
    std::cout << std::setprecision(6)
              << "trace(V) = " << clt.V.trace()
              << ", relative Frobenius error = " << report.relative_frobenius_error
              << '\n'
              << "coverage of +-2sigma bands:";
    for (double c : report.coverage) std::cout << ' ' << c;
    std::cout << '\n';
  });

  // ---- gen-data ----
  auto* cmd_gen = app.add_subcommand("gen-data", "emit synthetic objective data as JSON");
  std::string gen_kind = "sum_nonconvex";
  int gen_n = 62;
  int gen_p = 108;
  double gen_flip = 0.1;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "data.json";
  bool gen_shift = false;
  cmd_gen->add_option("--kind", gen_kind, "sum_nonconvex | logistic | quadratic");
  cmd_gen->add_option("--n", gen_n);
  cmd_gen->add_option("--features", gen_p);
  cmd_gen->add_option("--flip-prob", gen_flip);
  cmd_gen->add_option("--seed", gen_seed);
  cmd_gen->add_flag("--nonconvex-shift", gen_shift);
  cmd_gen->add_option("--out", gen_out);
  cmd_gen->callback([&] {
    nlohmann::json j;
    j["kind"] = gen_kind;
    j["seed"] = gen_seed;
    if (gen_kind == "logistic") {
      const auto [X, y] = synthetic_logistic_data(gen_n, gen_p, gen_flip, gen_seed);
      std::vector<std::vector<double>> rows(gen_n);
      for (int i = 0; i < gen_n; ++i) {
        rows[i].assign(X.row(i).data(), X.row(i).data() + gen_p);
      }
      j["features"] = rows;
      j["labels"] = std::vector<double>(y.data(), y.data() + gen_n);
    } else if (gen_kind == "sum_nonconvex") {
      auto model = make_sum_nonconvex(gen_n, gen_seed, gen_shift);
      j["n"] = gen_n;
      j["nonconvex_shift"] = gen_shift;
      j["theta_star"] = std::vector<double>(
          model->theta_star().data(),
          model->theta_star().data() + model->theta_star().size());
    } else if (gen_kind == "quadratic") {
      Rng rng(gen_seed);
      std::vector<double> b(gen_n);
      for (auto& v : b) v = 10.0 * uniform_double(rng);
      j["b"] = b;
    } else {
      throw std::runtime_error("unknown data kind: " + gen_kind);
    }
    std::ofstream out(gen_out);
    out << j.dump(2) << '\n';
    std::cout << "wrote " << gen_out << '\n';
  });

  // ---- slem-table ----
  auto* cmd_table = app.add_subcommand(
      "slem-table", "reference-matrix SLEM table with pass/fail checks");
  cmd_table->callback([&] {
    const SlemTable table = reproduce_slem_table();
    std::cout << table.to_text();
    if (!table.all_gated_pass()) throw CLI::RuntimeError(1);
  });

  CLI11_PARSE(app, argc, argv);

  return 0;
}
