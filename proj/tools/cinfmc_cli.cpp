// Command-line front end for the phase-transition, spectrum and certificate
// experiments. Exit codes: 0 success, 1 parameter error, 2 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cinfmc/errors.hpp"
#include "cinfmc/harness.hpp"

namespace {

using namespace cinfmc;

constexpr int kExitParameter = 1;
constexpr int kExitIo = 2;

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw ParameterError("unknown format '" + s + "' (expected csv or json)");
}

void add_solver_options(CLI::App* cmd, SolveOptions& o) {
  cmd->add_option("--max-iters", o.max_iters, "ADMM iteration cap");
  cmd->add_option("--step", o.step, "singular-value shrinkage threshold");
  cmd->add_option("--tol-primal", o.tol_primal);
  cmd->add_option("--tol-rel-change", o.tol_rel_change);
  cmd->add_option("--success-rmse-rel", o.success_rmse_rel);
}

void print_pt_summary(const PTGridResult& r) {
  for (const auto& row : r.rows) {
    std::printf("eta=%.4g beta=%.4g k=%d l=%d success=%d/%d agree=%d/%d\n", row.eta, row.beta,
                row.k, row.l, row.successes, row.trials, row.agreements, row.trials);
  }
  if (auto rate = r.off_boundary_agreement_rate()) {
    std::printf("off-boundary certificate/solver agreement: %.3f\n", *rate);
  }
}

void print_spectrum_summary(const SpectrumResult& r) {
  for (const auto& law : r.laws) {
    std::printf("%-6s dim=%d tv=%.4f max_empirical=%.6g max_theory=%.6g\n", to_string(law.kind),
                law.dimension, law.total_variation, law.empirical_max, law.theory_max);
  }
}

int run(const ExperimentConfig& cfg, OutputFormat fmt, bool plot, bool dump_matrix) {
  cfg.validate();
  switch (cfg.kind) {
    case ExperimentKind::PtCurve: {
      const auto curve = run_pt_curve(cfg);
      if (cfg.out_path.empty()) {
        std::cout << (fmt == OutputFormat::Json ? to_json(curve).dump(2) + "\n" : to_csv(curve));
      } else {
        emit_outputs(curve, cfg.out_path, fmt, plot);
      }
      break;
    }
    case ExperimentKind::PtSimulate: {
      if (!cfg.out_path.empty()) ensure_writable(cfg.out_path);
      const auto result = run_pt_simulation(cfg);
      print_pt_summary(result);
      if (!cfg.out_path.empty()) emit_outputs(result, cfg.out_path, fmt, plot);
      break;
    }
    case ExperimentKind::Spectrum: {
      if (!cfg.out_path.empty()) ensure_writable(cfg.out_path);
      const auto result = run_spectrum_experiment(cfg.beta_grid.front(), cfg.eta_grid.front(),
                                                  cfg.n, cfg.bins, cfg.seed, cfg.which);
      print_spectrum_summary(result);
      if (!cfg.out_path.empty()) emit_outputs(result, cfg.out_path, fmt, plot);
      break;
    }
    case ExperimentKind::CheckInstance: {
      const auto result = run_check_instance(cfg);
      const std::string text = result.to_json(dump_matrix).dump(2) + "\n";
      if (cfg.out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(cfg.out_path);
        if (!out || !(out << text)) throw IoError("cannot write '" + cfg.out_path.string() + "'");
      }
      break;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nuclear-norm completion for block causal-inference masks"};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string format = "csv";
  bool plot = false;
  bool dump_matrix = false;
  app.add_option("--config", config_path, "load the experiment from a JSON file");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--plot-script", plot, "also write a matplotlib script next to the output");

  ExperimentConfig curve;
  curve.kind = ExperimentKind::PtCurve;
  std::string curve_out;
  auto* c_curve = app.add_subcommand("pt-curve", "worst-case phase-transition curve");
  c_curve->add_option("--eta-min", curve.eta_min);
  c_curve->add_option("--eta-max", curve.eta_max);
  c_curve->add_option("--points", curve.points);
  c_curve->add_option("--out", curve_out);

  ExperimentConfig sim;
  sim.kind = ExperimentKind::PtSimulate;
  std::string sim_mode = "worst-case";
  std::string sim_out;
  auto* c_sim = app.add_subcommand("pt-simulate", "Monte Carlo phase-transition map");
  c_sim->add_option("--n", sim.n);
  c_sim->add_option("--eta", sim.eta_grid, "one or more eta values")->required();
  c_sim->add_option("--beta-grid", sim.beta_grid, "one or more beta values")->required();
  c_sim->add_option("--trials", sim.trials);
  c_sim->add_option("--seed", sim.seed);
  c_sim->add_option("--mode", sim_mode, "worst-case or independent");
  c_sim->add_option("--threads", sim.threads, "0 = all hardware threads");
  c_sim->add_option("--out", sim_out);
  add_solver_options(c_sim, sim.solver_opts);

  ExperimentConfig spec;
  spec.kind = ExperimentKind::Spectrum;
  spec.n = 1000;
  double spec_beta = 0.1;
  double spec_eta = 0.8;
  std::vector<std::string> spec_which;
  std::string spec_out;
  auto* c_spec = app.add_subcommand("spectrum", "empirical spectra against closed forms");
  c_spec->add_option("--beta", spec_beta);
  c_spec->add_option("--eta", spec_eta);
  c_spec->add_option("--n", spec.n);
  c_spec->add_option("--bins", spec.bins);
  c_spec->add_option("--seed", spec.seed);
  c_spec->add_option("--which", spec_which, "dtilde, d, q (default all)");
  c_spec->add_option("--out", spec_out);

  ExperimentConfig check;
  check.kind = ExperimentKind::CheckInstance;
  check.n = 60;
  std::string check_mode = "worst-case";
  std::string check_out;
  auto* c_check = app.add_subcommand("check", "certificate and solver on one instance");
  c_check->add_option("--n", check.n);
  c_check->add_option("--k", check.k)->required();
  c_check->add_option("--l", check.l)->required();
  c_check->add_option("--mode", check_mode);
  c_check->add_option("--seed", check.seed);
  c_check->add_option("--out", check_out);
  c_check->add_flag("--dump-matrix", dump_matrix, "include X_hat in the JSON report");
  add_solver_options(c_check, check.solver_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParameter;
  }

  try {
    const OutputFormat fmt = parse_format(format);
    ExperimentConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw IoError("cannot read config '" + config_path + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("config is not valid JSON: ") + e.what());
      }
      cfg = ExperimentConfig::from_json(j);
    } else if (*c_curve) {
      cfg = curve;
      cfg.out_path = curve_out;
    } else if (*c_sim) {
      cfg = sim;
      cfg.mode = parse_generation_mode(sim_mode);
      cfg.out_path = sim_out;
    } else if (*c_spec) {
      cfg = spec;
      cfg.beta_grid = {spec_beta};
      cfg.eta_grid = {spec_eta};
      if (!spec_which.empty()) {
        cfg.which.clear();
        for (const auto& w : spec_which) cfg.which.push_back(parse_spectrum_law(w));
      }
      cfg.out_path = spec_out;
    } else if (*c_check) {
      cfg = check;
      cfg.mode = parse_generation_mode(check_mode);
      cfg.out_path = check_out;
    } else {
      std::cerr << app.help();
      return kExitParameter;
    }
    return run(cfg, fmt, plot, dump_matrix);
  } catch (const IoError& e) {
    std::cerr << "{\"error\": \"io\", \"message\": " << nlohmann::json(e.what()).dump() << "}\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\": \"parameter\", \"message\": " << nlohmann::json(e.what()).dump()
              << "}\n";
    return kExitParameter;
  }
}
