#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cinfmc/equivalence.hpp"
#include "cinfmc/freeprob.hpp"
#include "cinfmc/phase.hpp"
#include "cinfmc/randmat.hpp"
#include "cinfmc/solver.hpp"

namespace cinfmc {

enum class ExperimentKind { PtSimulate, Spectrum, CheckInstance, PtCurve };
enum class OutputFormat { Csv, Json };
enum class SpectrumLawKind { Dtilde, D, Q };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::PtSimulate;
  int n = 80;
  std::vector<double> eta_grid;
  std::vector<double> beta_grid;
  int trials = 20;
  std::uint64_t seed = 1;
  GenerationMode mode = GenerationMode::WorstCase;
  std::filesystem::path out_path;
  SolveOptions solver_opts;
  /// 0 = std::thread::hardware_concurrency().
  int threads = 0;

  // spectrum
  int bins = 100;
  std::vector<SpectrumLawKind> which = {SpectrumLawKind::Dtilde, SpectrumLawKind::D,
                                        SpectrumLawKind::Q};
  // check
  int k = 0;
  int l = 0;
  // pt-curve
  double eta_min = 0.01;
  double eta_max = 0.99;
  int points = 99;

  /// Throws ParameterError on empty sweep grids, trials < 1, and similar.
  void validate() const;

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct PTGridRow {
  double eta = 0.0;
  double beta = 0.0;
  int k = 0;
  int l = 0;
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;
  double mean_rmse_rel = 0.0;
  double mean_lambda_max_product = 0.0;
  /// Trials whose certificate verdict equals the solver outcome.
  int agreements = 0;
  /// |beta - beta_wc(eta)| >= 0.2 beta_wc(eta).
  bool off_boundary = false;
};

struct PTGridResult {
  int n = 0;
  GenerationMode mode = GenerationMode::WorstCase;
  std::vector<PTGridRow> rows;

  /// Pooled agreement rate over off-boundary rows; nullopt if there are none.
  std::optional<double> off_boundary_agreement_rate() const;
};

struct SpectrumBin {
  double lo = 0.0;
  double hi = 0.0;
  double empirical_mass = 0.0;
  double theory_mass = 0.0;
};

struct SpectrumAtom {
  double location = 0.0;
  double theory_mass = 0.0;
  double empirical_mass = 0.0;
};

struct SpectrumLaw {
  SpectrumLawKind kind = SpectrumLawKind::Dtilde;
  int dimension = 0;
  std::vector<SpectrumAtom> atoms;
  std::vector<SpectrumBin> bins;
  double total_variation = 0.0;
  double empirical_max = 0.0;
  double theory_max = 0.0;  ///< right edge of the law (atoms and bulk)
};

struct SpectrumResult {
  double beta = 0.0;
  double eta = 0.0;
  int n = 0;
  int k = 0;
  int l = 0;
  std::uint64_t seed = 0;
  std::vector<SpectrumLaw> laws;

  const SpectrumLaw* find(SpectrumLawKind kind) const;
};

struct CheckResult {
  int n = 0;
  int k = 0;
  int l = 0;
  GenerationMode mode = GenerationMode::WorstCase;
  std::uint64_t seed = 0;
  CertificateReport certificate;
  SolveReport solve;
  bool agreement = false;

  nlohmann::json to_json(bool include_matrix = false) const;
};

inline constexpr double kAtomTolerance = 1e-6;

/// Seed of one Monte Carlo trial; depends only on its grid coordinates.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t eta_index,
                         std::uint64_t beta_index, std::uint64_t trial_index);

/// k = round(beta n), l = round(eta n), k clamped to <= l.
std::pair<int, int> discretize(double beta, double eta, int n);

PTGridResult run_pt_simulation(const ExperimentConfig& cfg);

SpectrumResult run_spectrum_experiment(double beta, double eta, int n, int bins,
                                       std::uint64_t seed,
                                       const std::vector<SpectrumLawKind>& which = {
                                           SpectrumLawKind::Dtilde, SpectrumLawKind::D,
                                           SpectrumLawKind::Q});

CheckResult run_check_instance(const ExperimentConfig& cfg);

std::vector<PTPoint> run_pt_curve(const ExperimentConfig& cfg);

// Output. All writers throw IoError naming the path on failure.
inline constexpr const char* kPtGridCsvHeader =
    "eta,beta,k,l,trials,successes,success_rate,mean_rmse_rel,mean_lambda_max_product";
inline constexpr const char* kPtCurveCsvHeader = "eta,alpha,beta_wc";

std::string to_csv(const PTGridResult& r);
std::string to_csv(const SpectrumResult& r);
std::string to_csv(const std::vector<PTPoint>& curve);
nlohmann::json to_json(const PTGridResult& r);
nlohmann::json to_json(const SpectrumResult& r);
nlohmann::json to_json(const std::vector<PTPoint>& curve);

void emit_outputs(const PTGridResult& r, const std::filesystem::path& out, OutputFormat fmt,
                  bool plot_script);
void emit_outputs(const SpectrumResult& r, const std::filesystem::path& out, OutputFormat fmt,
                  bool plot_script);
void emit_outputs(const std::vector<PTPoint>& curve, const std::filesystem::path& out,
                  OutputFormat fmt, bool plot_script);

/// Fails fast with IoError if `path` cannot be opened for writing.
void ensure_writable(const std::filesystem::path& path);

const char* to_string(SpectrumLawKind k);
SpectrumLawKind parse_spectrum_law(const std::string& text);
ExperimentKind parse_experiment_kind(const std::string& text);
const char* to_string(ExperimentKind k);

}  // namespace cinfmc
