#include "cinfmc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "cinfmc/errors.hpp"

namespace cinfmc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Shortest round-trip representation is platform dependent; fixed %.12g is
// stable and ample for the values we write.
std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

// Runs body(i) for i in [0, count) on `threads` workers. Each index writes
// only its own output slot, so the merge order is independent of scheduling.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body body) {
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

std::vector<double> symmetric_eigenvalues(const Matrix& S) {
  if (S.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> es(S, Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

SpectrumLaw compare_to_density(SpectrumLawKind kind, const std::vector<double>& eigs,
                               const Density& density, double range_lo, double range_hi,
                               int bins) {
  SpectrumLaw law;
  law.kind = kind;
  law.dimension = static_cast<int>(eigs.size());
  const double total = static_cast<double>(eigs.size());

  std::vector<bool> is_atom(eigs.size(), false);
  for (const Atom& a : density.atoms) {
    SpectrumAtom sa;
    sa.location = a.location;
    sa.theory_mass = a.mass;
    std::size_t count = 0;
    for (std::size_t i = 0; i < eigs.size(); ++i) {
      if (!is_atom[i] && std::abs(eigs[i] - a.location) <= kAtomTolerance) {
        is_atom[i] = true;
        ++count;
      }
    }
    sa.empirical_mass = count / total;
    law.atoms.push_back(sa);
  }

  const double width = (range_hi - range_lo) / bins;
  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    if (is_atom[i]) continue;
    auto b = static_cast<long>(std::floor((eigs[i] - range_lo) / width));
    b = std::clamp(b, 0L, static_cast<long>(bins) - 1);
    ++counts[static_cast<std::size_t>(b)];
  }
  double l1 = 0.0;
  for (int b = 0; b < bins; ++b) {
    SpectrumBin bin;
    bin.lo = range_lo + b * width;
    bin.hi = b + 1 == bins ? range_hi : range_lo + (b + 1) * width;
    bin.empirical_mass = counts[static_cast<std::size_t>(b)] / total;
    bin.theory_mass = density.bulk_mass(bin.lo, bin.hi);
    l1 += std::abs(bin.empirical_mass - bin.theory_mass);
    law.bins.push_back(bin);
  }
  for (const SpectrumAtom& a : law.atoms) l1 += std::abs(a.empirical_mass - a.theory_mass);
  law.total_variation = 0.5 * l1;

  law.empirical_max = eigs.empty() ? 0.0 : *std::max_element(eigs.begin(), eigs.end());
  law.theory_max = density.support_hi;
  for (const Atom& a : density.atoms) {
    if (a.mass > 0.0) law.theory_max = std::max(law.theory_max, a.location);
  }
  return law;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (n < 1) throw ParameterError("n must be positive");
  switch (kind) {
    case ExperimentKind::PtSimulate:
      if (eta_grid.empty() || beta_grid.empty()) {
        throw ParameterError("pt-simulate needs nonempty eta and beta grids");
      }
      if (trials < 1) throw ParameterError("trials must be >= 1");
      for (double e : eta_grid)
        if (!(e >= 0.0 && e <= 1.0)) throw ParameterError("eta grid values must lie in [0, 1]");
      for (double b : beta_grid)
        if (!(b >= 0.0 && b <= 1.0)) throw ParameterError("beta grid values must lie in [0, 1]");
      solver_opts.validate();
      break;
    case ExperimentKind::Spectrum:
      if (eta_grid.size() != 1 || beta_grid.size() != 1) {
        throw ParameterError("spectrum needs exactly one beta and one eta");
      }
      if (n < 100) throw ParameterError("spectrum needs n >= 100");
      if (bins < 1) throw ParameterError("bins must be >= 1");
      if (which.empty()) throw ParameterError("spectrum needs at least one law");
      break;
    case ExperimentKind::CheckInstance:
      if (k < 0 || k > n || l < 0 || l > n) throw ParameterError("check needs 0 <= k, l <= n");
      solver_opts.validate();
      break;
    case ExperimentKind::PtCurve:
      if (points < 1) throw ParameterError("points must be >= 1");
      if (!(eta_min > 0.0 && eta_max < 1.0 && eta_min <= eta_max)) {
        throw ParameterError("pt-curve needs 0 < eta_min <= eta_max < 1");
      }
      break;
  }
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    c.kind = parse_experiment_kind(j.at("kind").get<std::string>());
    c.n = j.value("n", c.n);
    c.eta_grid = j.value("eta_grid", c.eta_grid);
    c.beta_grid = j.value("beta_grid", c.beta_grid);
    if (j.contains("eta")) c.eta_grid = {j.at("eta").get<double>()};
    if (j.contains("beta")) c.beta_grid = {j.at("beta").get<double>()};
    c.trials = j.value("trials", c.trials);
    c.seed = j.value("seed", c.seed);
    if (j.contains("mode")) c.mode = parse_generation_mode(j.at("mode").get<std::string>());
    if (j.contains("out_path")) c.out_path = j.at("out_path").get<std::string>();
    c.threads = j.value("threads", c.threads);
    c.bins = j.value("bins", c.bins);
    if (j.contains("which")) {
      c.which.clear();
      for (const auto& w : j.at("which")) c.which.push_back(parse_spectrum_law(w.get<std::string>()));
    }
    c.k = j.value("k", c.k);
    c.l = j.value("l", c.l);
    c.eta_min = j.value("eta_min", c.eta_min);
    c.eta_max = j.value("eta_max", c.eta_max);
    c.points = j.value("points", c.points);
    if (j.contains("solver_opts")) {
      const auto& s = j.at("solver_opts");
      c.solver_opts.max_iters = s.value("max_iters", c.solver_opts.max_iters);
      c.solver_opts.step = s.value("step", c.solver_opts.step);
      c.solver_opts.tol_primal = s.value("tol_primal", c.solver_opts.tol_primal);
      c.solver_opts.tol_rel_change = s.value("tol_rel_change", c.solver_opts.tol_rel_change);
      c.solver_opts.success_rmse_rel = s.value("success_rmse_rel", c.solver_opts.success_rmse_rel);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("bad config: ") + e.what());
  }
  return c;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json w = nlohmann::json::array();
  for (auto s : which) w.push_back(cinfmc::to_string(s));
  return {{"kind", cinfmc::to_string(kind)},
          {"n", n},
          {"eta_grid", eta_grid},
          {"beta_grid", beta_grid},
          {"trials", trials},
          {"seed", seed},
          {"mode", cinfmc::to_string(mode)},
          {"out_path", out_path.string()},
          {"threads", threads},
          {"bins", bins},
          {"which", w},
          {"k", k},
          {"l", l},
          {"eta_min", eta_min},
          {"eta_max", eta_max},
          {"points", points},
          {"solver_opts",
           {{"max_iters", solver_opts.max_iters},
            {"step", solver_opts.step},
            {"tol_primal", solver_opts.tol_primal},
            {"tol_rel_change", solver_opts.tol_rel_change},
            {"success_rmse_rel", solver_opts.success_rmse_rel}}}};
}

std::optional<double> PTGridResult::off_boundary_agreement_rate() const {
  int trials = 0;
  int agree = 0;
  for (const auto& r : rows) {
    if (!r.off_boundary) continue;
    trials += r.trials;
    agree += r.agreements;
  }
  if (trials == 0) return std::nullopt;
  return static_cast<double>(agree) / trials;
}

const SpectrumLaw* SpectrumResult::find(SpectrumLawKind kind) const {
  for (const auto& law : laws)
    if (law.kind == kind) return &law;
  return nullptr;
}

nlohmann::json CheckResult::to_json(bool include_matrix) const {
  return {{"n", n},
          {"k", k},
          {"l", l},
          {"mode", cinfmc::to_string(mode)},
          {"seed", seed},
          {"certificate", certificate.to_json()},
          {"solve", solve.to_json(include_matrix)},
          {"agreement", agreement}};
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t eta_index, std::uint64_t beta_index,
                         std::uint64_t trial_index) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ eta_index);
  h = splitmix64(h ^ beta_index);
  return splitmix64(h ^ trial_index);
}

std::pair<int, int> discretize(double beta, double eta, int n) {
  const int l = static_cast<int>(std::lround(eta * n));
  const int k = std::min(static_cast<int>(std::lround(beta * n)), l);
  return {k, l};
}

PTGridResult run_pt_simulation(const ExperimentConfig& cfg) {
  if (cfg.kind != ExperimentKind::PtSimulate) throw ParameterError("config kind is not pt-simulate");
  cfg.validate();

  struct TrialOutcome {
    bool success = false;
    bool agreement = false;
    double rmse_rel = 0.0;
    double lambda_product = 0.0;
  };
  const std::size_t n_eta = cfg.eta_grid.size();
  const std::size_t n_beta = cfg.beta_grid.size();
  const std::size_t per_cell = static_cast<std::size_t>(cfg.trials);
  std::vector<TrialOutcome> outcomes(n_eta * n_beta * per_cell);

  parallel_for(outcomes.size(), cfg.threads, [&](std::size_t idx) {
    const std::size_t t = idx % per_cell;
    const std::size_t cell = idx / per_cell;
    const std::size_t bi = cell % n_beta;
    const std::size_t ei = cell / n_beta;
    const auto [k, l] = discretize(cfg.beta_grid[bi], cfg.eta_grid[ei], cfg.n);

    Rng rng(trial_seed(cfg.seed, ei, bi, t));
    const LowRankInstance inst = make_lowrank(cfg.n, k, cfg.mode, SigmaSpec::UnitOnes, rng);
    const MaskMatrix mask = make_block_mask(cfg.n, l);
    const SolveReport rep = complete_nuclear(apply_mask(mask, inst.X_sol), mask, cfg.solver_opts,
                                             &inst);
    const CertificateReport cert = check_equivalence(inst, mask);

    TrialOutcome& o = outcomes[idx];
    o.success = rep.success;
    o.rmse_rel = *rep.rmse_rel;
    o.lambda_product = cert.lambda_max_product;
    o.agreement = cert.equivalent == rep.success;
  });

  PTGridResult result;
  result.n = cfg.n;
  result.mode = cfg.mode;
  for (std::size_t ei = 0; ei < n_eta; ++ei) {
    for (std::size_t bi = 0; bi < n_beta; ++bi) {
      PTGridRow row;
      row.eta = cfg.eta_grid[ei];
      row.beta = cfg.beta_grid[bi];
      std::tie(row.k, row.l) = discretize(row.beta, row.eta, cfg.n);
      row.trials = cfg.trials;
      double rmse_sum = 0.0;
      double lambda_sum = 0.0;
      for (std::size_t t = 0; t < per_cell; ++t) {
        const TrialOutcome& o = outcomes[(ei * n_beta + bi) * per_cell + t];
        row.successes += o.success ? 1 : 0;
        row.agreements += o.agreement ? 1 : 0;
        rmse_sum += o.rmse_rel;
        lambda_sum += o.lambda_product;
      }
      row.success_rate = static_cast<double>(row.successes) / row.trials;
      row.mean_rmse_rel = rmse_sum / row.trials;
      row.mean_lambda_max_product = lambda_sum / row.trials;
      if (row.eta > 0.0 && row.eta < 1.0) {
        const double wc = beta_wc(row.eta);
        row.off_boundary = std::abs(row.beta - wc) >= 0.2 * wc;
      }
      result.rows.push_back(row);
    }
  }
  return result;
}

SpectrumResult run_spectrum_experiment(double beta, double eta, int n, int bins,
                                       std::uint64_t seed,
                                       const std::vector<SpectrumLawKind>& which) {
  if (n < 100) throw ParameterError("spectrum experiment needs n >= 100");
  if (bins < 1) throw ParameterError("bins must be >= 1");
  const SpectralParams p = SpectralParams::make(beta, eta);
  const bool want_q = std::find(which.begin(), which.end(), SpectrumLawKind::Q) != which.end();
  if (want_q && beta > eta) throw AssumptionViolated("Q spectrum requires beta <= eta");
  if (want_q && p.x_l <= 0.0) throw DegenerateParameter("Q spectrum unbounded for beta = eta");

  SpectrumResult res;
  res.beta = beta;
  res.eta = eta;
  res.n = n;
  res.seed = seed;
  res.k = static_cast<int>(std::lround(beta * n));
  res.l = static_cast<int>(std::lround(eta * n));
  const int k = res.k;
  const int l = res.l;
  const int h = n - l;
  if (k < 1 || h < 1) throw ParameterError("spectrum experiment needs k >= 1 and l < n");

  Rng rng(seed);
  // Vperp Vperp^T = I - Vbar Vbar^T, so only the k-column factor is drawn.
  const Matrix Vbar = sample_haar_basis(n, k, rng);

  std::vector<double> d_eigs;
  auto ensure_d = [&] {
    if (!d_eigs.empty()) return;
    const Matrix B = Vbar.bottomRows(h);
    d_eigs = symmetric_eigenvalues(Matrix::Identity(h, h) - B * B.transpose());
  };

  for (SpectrumLawKind kind : which) {
    if (kind == SpectrumLawKind::Dtilde) {
      // Nonzero spectrum of Vperp Vperp^T U U^T equals that of
      // U^T (I - Vbar Vbar^T) U for an independent Haar n x (n-l) frame U.
      const Matrix Ud = sample_haar_basis(n, h, rng);
      const Matrix C = Ud.transpose() * Vbar;
      std::vector<double> eigs = symmetric_eigenvalues(Matrix::Identity(h, h) - C * C.transpose());
      eigs.insert(eigs.end(), static_cast<std::size_t>(l), 0.0);
      res.laws.push_back(compare_to_density(kind, eigs, density_dtilde(p), 0.0, 1.0, bins));
    } else if (kind == SpectrumLawKind::D) {
      ensure_d();
      res.laws.push_back(compare_to_density(kind, d_eigs, density_d(p), 0.0, 1.0, bins));
    } else {
      ensure_d();
      std::vector<double> q;
      q.reserve(d_eigs.size());
      for (double d : d_eigs) {
        if (!(d > 0.0)) throw SingularityError("Q spectrum: D has a zero eigenvalue");
        q.push_back(1.0 / d - 1.0);
      }
      const Density dq = density_q(p);
      const double emp_max = *std::max_element(q.begin(), q.end());
      const double hi = 1.05 * std::max(dq.support_hi, emp_max);
      res.laws.push_back(compare_to_density(kind, q, dq, 0.0, hi, bins));
    }
  }
  return res;
}

CheckResult run_check_instance(const ExperimentConfig& cfg) {
  if (cfg.kind != ExperimentKind::CheckInstance) throw ParameterError("config kind is not check");
  cfg.validate();
  CheckResult r;
  r.n = cfg.n;
  r.k = cfg.k;
  r.l = cfg.l;
  r.mode = cfg.mode;
  r.seed = cfg.seed;
  Rng rng(cfg.seed);
  const LowRankInstance inst = make_lowrank(cfg.n, cfg.k, cfg.mode, SigmaSpec::UnitOnes, rng);
  const MaskMatrix mask = make_block_mask(cfg.n, cfg.l);
  r.certificate = check_equivalence(inst, mask);
  r.solve = complete_nuclear(apply_mask(mask, inst.X_sol), mask, cfg.solver_opts, &inst);
  r.agreement = r.certificate.equivalent == r.solve.success;
  return r;
}

std::vector<PTPoint> run_pt_curve(const ExperimentConfig& cfg) {
  if (cfg.kind != ExperimentKind::PtCurve) throw ParameterError("config kind is not pt-curve");
  cfg.validate();
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(cfg.points));
  for (int i = 0; i < cfg.points; ++i) {
    grid.push_back(cfg.points == 1
                       ? cfg.eta_min
                       : cfg.eta_min + (cfg.eta_max - cfg.eta_min) * i / (cfg.points - 1));
  }
  return pt_curve(grid);
}

std::string to_csv(const PTGridResult& r) {
  std::ostringstream os;
  os << kPtGridCsvHeader << '\n';
  for (const auto& row : r.rows) {
    os << fmt(row.eta) << ',' << fmt(row.beta) << ',' << row.k << ',' << row.l << ','
       << row.trials << ',' << row.successes << ',' << fmt(row.success_rate) << ','
       << fmt(row.mean_rmse_rel) << ',' << fmt(row.mean_lambda_max_product) << '\n';
  }
  return os.str();
}

std::string to_csv(const SpectrumResult& r) {
  std::ostringstream os;
  os << "# atoms\n";
  os << "law,location,theory_mass,empirical_mass\n";
  for (const auto& law : r.laws)
    for (const auto& a : law.atoms)
      os << to_string(law.kind) << ',' << fmt(a.location) << ',' << fmt(a.theory_mass) << ','
         << fmt(a.empirical_mass) << '\n';
  os << "# bins\n";
  os << "law,bin_lo,bin_hi,empirical_mass,theory_mass\n";
  for (const auto& law : r.laws)
    for (const auto& b : law.bins)
      os << to_string(law.kind) << ',' << fmt(b.lo) << ',' << fmt(b.hi) << ','
         << fmt(b.empirical_mass) << ',' << fmt(b.theory_mass) << '\n';
  return os.str();
}

std::string to_csv(const std::vector<PTPoint>& curve) {
  std::ostringstream os;
  os << kPtCurveCsvHeader << '\n';
  for (const auto& p : curve) os << fmt(p.eta) << ',' << fmt(p.alpha) << ',' << fmt(p.beta) << '\n';
  return os.str();
}

nlohmann::json to_json(const PTGridResult& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"eta", row.eta},
                    {"beta", row.beta},
                    {"k", row.k},
                    {"l", row.l},
                    {"trials", row.trials},
                    {"successes", row.successes},
                    {"success_rate", row.success_rate},
                    {"mean_rmse_rel", row.mean_rmse_rel},
                    {"mean_lambda_max_product", row.mean_lambda_max_product},
                    {"agreements", row.agreements},
                    {"off_boundary", row.off_boundary}});
  }
  nlohmann::json j{{"n", r.n}, {"mode", to_string(r.mode)}, {"rows", rows}};
  const auto rate = r.off_boundary_agreement_rate();
  j["off_boundary_agreement_rate"] = rate ? nlohmann::json(*rate) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const SpectrumResult& r) {
  nlohmann::json laws = nlohmann::json::array();
  for (const auto& law : r.laws) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& a : law.atoms) atoms.push_back({a.location, a.theory_mass, a.empirical_mass});
    nlohmann::json bins = nlohmann::json::array();
    for (const auto& b : law.bins) bins.push_back({b.lo, b.hi, b.empirical_mass, b.theory_mass});
    laws.push_back({{"law", to_string(law.kind)},
                    {"dimension", law.dimension},
                    {"total_variation", law.total_variation},
                    {"empirical_max", law.empirical_max},
                    {"theory_max", law.theory_max},
                    {"atoms", atoms},
                    {"bins", bins}});
  }
  return {{"beta", r.beta}, {"eta", r.eta}, {"n", r.n}, {"k", r.k},
          {"l", r.l},       {"seed", r.seed}, {"laws", laws}};
}

nlohmann::json to_json(const std::vector<PTPoint>& curve) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : curve) pts.push_back({{"eta", p.eta}, {"alpha", p.alpha}, {"beta_wc", p.beta}});
  return pts;
}

namespace {

std::string plot_script_pt_grid(const std::string& csv) {
  return "import csv\nimport math\nimport matplotlib.pyplot as plt\n\n"
         "rows = list(csv.DictReader(open('" + csv + "')))\n"
         "eta = sorted({float(r['eta']) for r in rows})\n"
         "for e in eta:\n"
         "    sel = [r for r in rows if float(r['eta']) == e]\n"
         "    plt.plot([float(r['beta']) for r in sel], [float(r['success_rate']) for r in sel],\n"
         "             'o-', label=f'eta={e:g}')\n"
         "    plt.axvline(0.5 - math.sqrt(e - e * e), linestyle='--', color='gray')\n"
         "plt.xlabel('beta'); plt.ylabel('success rate'); plt.legend()\n"
         "plt.savefig('" + csv + ".png', dpi=150)\n";
}

std::string plot_script_spectrum(const std::string& csv) {
  return "import matplotlib.pyplot as plt\n\n"
         "section = None\nbins = {}\n"
         "for line in open('" + csv + "'):\n"
         "    line = line.strip()\n"
         "    if line.startswith('#'):\n"
         "        section = line[2:]\n"
         "        continue\n"
         "    f = line.split(',')\n"
         "    if section != 'bins' or f[0] == 'law':\n"
         "        continue\n"
         "    lo, hi, emp, th = map(float, f[1:])\n"
         "    bins.setdefault(f[0], []).append((lo, hi, emp, th))\n"
         "fig, axes = plt.subplots(1, len(bins), figsize=(5 * len(bins), 4), squeeze=False)\n"
         "for ax, (law, bs) in zip(axes[0], bins.items()):\n"
         "    w = bs[0][1] - bs[0][0]\n"
         "    ax.bar([b[0] for b in bs], [b[2] / w for b in bs], width=w, align='edge', alpha=0.5)\n"
         "    ax.plot([(b[0] + b[1]) / 2 for b in bs], [b[3] / w for b in bs], 'r-')\n"
         "    ax.set_title(law)\n"
         "plt.savefig('" + csv + ".png', dpi=150)\n";
}

std::string plot_script_curve(const std::string& csv) {
  return "import csv\nimport matplotlib.pyplot as plt\n\n"
         "rows = list(csv.DictReader(open('" + csv + "')))\n"
         "fig, (a, b) = plt.subplots(1, 2, figsize=(10, 4))\n"
         "a.plot([float(r['eta']) for r in rows], [float(r['beta_wc']) for r in rows])\n"
         "a.set_xlabel('eta'); a.set_ylabel('beta')\n"
         "b.plot([float(r['alpha']) for r in rows], [float(r['beta_wc']) for r in rows])\n"
         "b.set_xlabel('alpha'); b.set_ylabel('beta')\n"
         "plt.savefig('" + csv + ".png', dpi=150)\n";
}

template <typename Result, typename Script>
void emit_impl(const Result& r, const std::filesystem::path& out, OutputFormat fmt_kind,
               bool plot_script, Script script) {
  if (fmt_kind == OutputFormat::Json) {
    write_file(out, to_json(r).dump(2) + "\n");
  } else {
    write_file(out, to_csv(r));
  }
  if (plot_script) {
    std::filesystem::path py = out;
    py.replace_extension(".plot.py");
    write_file(py, script(out.filename().string()));
  }
}

}  // namespace

void emit_outputs(const PTGridResult& r, const std::filesystem::path& out, OutputFormat f,
                  bool plot_script) {
  emit_impl(r, out, f, plot_script, plot_script_pt_grid);
}

void emit_outputs(const SpectrumResult& r, const std::filesystem::path& out, OutputFormat f,
                  bool plot_script) {
  emit_impl(r, out, f, plot_script, plot_script_spectrum);
}

void emit_outputs(const std::vector<PTPoint>& curve, const std::filesystem::path& out,
                  OutputFormat f, bool plot_script) {
  emit_impl(curve, out, f, plot_script, plot_script_curve);
}

void ensure_writable(const std::filesystem::path& path) {
  const bool existed = std::filesystem::exists(path);
  std::ofstream probe(path, std::ios::app);
  if (!probe) throw IoError("cannot open '" + path.string() + "' for writing");
  probe.close();
  if (!existed) std::filesystem::remove(path);
}

const char* to_string(SpectrumLawKind k) {
  switch (k) {
    case SpectrumLawKind::Dtilde:
      return "dtilde";
    case SpectrumLawKind::D:
      return "d";
    case SpectrumLawKind::Q:
      return "q";
  }
  return "unknown";
}

SpectrumLawKind parse_spectrum_law(const std::string& text) {
  if (text == "dtilde") return SpectrumLawKind::Dtilde;
  if (text == "d") return SpectrumLawKind::D;
  if (text == "q") return SpectrumLawKind::Q;
  throw ParameterError("unknown spectrum law '" + text + "' (expected dtilde, d or q)");
}

ExperimentKind parse_experiment_kind(const std::string& text) {
  if (text == "pt-simulate") return ExperimentKind::PtSimulate;
  if (text == "spectrum") return ExperimentKind::Spectrum;
  if (text == "check") return ExperimentKind::CheckInstance;
  if (text == "pt-curve") return ExperimentKind::PtCurve;
  throw ParameterError("unknown experiment kind '" + text + "'");
}

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::PtSimulate:
      return "pt-simulate";
    case ExperimentKind::Spectrum:
      return "spectrum";
    case ExperimentKind::CheckInstance:
      return "check";
    case ExperimentKind::PtCurve:
      return "pt-curve";
  }
  return "unknown";
}

}  // namespace cinfmc
