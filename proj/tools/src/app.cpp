#include "susypt_cli/app.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "susypt/errors.hpp"
#include "susypt/shape_invariance.hpp"
#include "susypt/spectral_solver.hpp"
#include "susypt/verification.hpp"

namespace susypt::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Superpotential superpotential_for(const RunConfig& cfg) {
  DomainSpec domain = default_domain(cfg.family);
  // let the half line reach down to the first grid node
  if (domain.kind == DomainSpec::Kind::HalfLine && cfg.grid.x_min > 0.0) {
    domain = DomainSpec::half_line(std::min(domain.epsilon, cfg.grid.x_min));
  }
  return make_superpotential(cfg.id(), cfg.params, domain);
}

int resolve_levels(const RunConfig& cfg, const Superpotential& w) {
  const int n_max = bound_level_count(make_descriptor(cfg.family), w);
  const int levels = cfg.levels.value_or(n_max);
  if (n_max == 0) {
    throw DomainError(std::string(to_string(cfg.family)) + " has no bound levels for these parameters (n_max = 0)");
  }
  if (levels > n_max) {
    throw DomainError("requested " + std::to_string(levels) + " levels but " +
                      std::string(to_string(cfg.family)) + " supports n_max = " +
                      std::to_string(n_max) + " bound levels");
  }
  return levels;
}

SpectrumResult analytic_spectrum(const RunConfig& cfg, const Superpotential& w, int levels) {
  if (cfg.family == Family::Scarf2General) {
    return spectrum_by_summation(make_descriptor(cfg.family), w, levels);
  }
  return closed_form_spectrum(cfg.id(), cfg.params, levels);
}

std::vector<double> sweep_points(const Sweep& s) {
  if (s.steps == 1 || s.from == s.to) return {s.from};
  std::vector<double> pts(std::size_t(s.steps));
  for (int i = 0; i < s.steps; ++i) {
    pts[std::size_t(i)] = i + 1 == s.steps ? s.to : s.from + (s.to - s.from) * double(i) / double(s.steps - 1);
  }
  return pts;
}

nlohmann::json config_meta(const RunConfig& cfg, const std::string& command) {
  nlohmann::json m;
  m["command"] = command;
  m["family"] = std::string(to_string(cfg.family));
  m["sign"] = std::string(to_string(cfg.sign));
  m["params"] = {{"A", cfg.params.A},       {"B", cfg.params.B},
                 {"C_pt", cfg.params.C_pt}, {"alpha", cfg.params.alpha},
                 {"alpha_c", cfg.params.alpha_c}, {"beta", cfg.params.beta}};
  m["grid"] = {{"x_min", cfg.grid.x_min}, {"x_max", cfg.grid.x_max}, {"n_points", cfg.grid.n_points}};
  return m;
}

// Table sink: the --output path, else the config path, else `out`.
class Emitter {
 public:
  Emitter(std::ostream& out, std::ostream& err, std::string path)
      : out_(out), err_(err), path_(std::move(path)) {}

  void write(const RunConfig& cfg, const Table& t, const nlohmann::json& meta) {
    std::ostringstream buf;
    if (cfg.format == Format::Json) write_json(buf, t, meta);
    else write_csv(buf, t);
    if (path_.empty()) {
      out_ << buf.str();
      return;
    }
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw Error("cannot write output file '" + path_ + "'");
    f << buf.str();
    if (!f) throw Error("failed writing output file '" + path_ + "'");
  }

  // Informational lines never mix with a table printed on stdout.
  std::ostream& info() { return path_.empty() ? err_ : out_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
  std::string path_;
};

}  // namespace

Table potential_table(const RunConfig& cfg, bool plus) {
  const Superpotential w = superpotential_for(cfg);
  const Grid grid = cfg.make_grid();
  const GridFunction V = reduced_potential(w, plus ? Partner::Plus : Partner::Minus, grid);
  Table t{{"x", "re_V", "im_V"}, {}};
  t.rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    t.rows.push_back({grid.node(i), V.values[i].real(), V.values[i].imag()});
  }
  return t;
}

SpectrumOutcome spectrum_table(const RunConfig& cfg) {
  const Superpotential w = superpotential_for(cfg);
  const int levels = resolve_levels(cfg, w);
  SpectrumResult analytic = analytic_spectrum(cfg, w, levels);

  SpectrumOutcome o;
  o.branch = analytic.branch;
  std::vector<Complex> numeric;
  if (w.shape == Shape::TanhSech) {
    const GridFunction V = reduced_potential(w, Partner::Minus, cfg.make_grid());
    const auto raw = eigenvalues(discretize_hamiltonian(V));
    const auto candidates = bound_state_candidates(raw, V);
    o.artifacts_discarded = int(raw.size() - candidates.size());
    for (const Complex& e : branch_levels(candidates, w)) numeric.push_back(e - analytic.offset);
  } else {
    o.numeric_available = false;
  }

  const bool shift = cfg.convention == kConventionAsymptoteZero;
  const Complex offset = analytic.offset;
  EigenReport report = match_spectra(numeric, analytic, cfg.tolerances.match);
  o.all_matched = !o.numeric_available || report.all_matched();

  o.table.columns = {"n", "re_E_analytic", "im_E_analytic", "re_E_numeric", "im_E_numeric", "abs_err"};
  for (int n = 0; n < levels; ++n) {
    Complex ea = analytic.energies[std::size_t(n)];
    double re_num = kNaN, im_num = kNaN, err = kNaN;
    for (const LevelMatch& m : report.matched) {
      if (m.n != n) continue;
      Complex en = m.numeric;
      if (shift) en += offset;
      re_num = en.real();
      im_num = en.imag();
      err = m.abs_error;
    }
    if (shift) ea += offset;
    o.table.rows.push_back({std::int64_t(n), ea.real(), ea.imag(), re_num, im_num, err});
  }
  return o;
}

WavefunctionOutcome wavefunction_table(const RunConfig& cfg, bool ladder) {
  const Superpotential w = superpotential_for(cfg);
  const Grid grid = cfg.make_grid();
  const int n_max = bound_level_count(make_descriptor(cfg.family), w);
  if (cfg.level >= n_max) {
    throw DomainError("level " + std::to_string(cfg.level) + " is not bound; n_max = " +
                      std::to_string(n_max) + " levels");
  }
  WavefunctionOutcome o;
  GridFunction psi = ladder ? ladder_state(make_descriptor(cfg.family), w, cfg.level, grid)
                            : analytic_eigenfunction(cfg.id(), cfg.params, cfg.level, grid);
  if (ladder && (cfg.family == Family::Scarf2Real || cfg.family == Family::Scarf2Broken)) {
    const GridFunction ana = analytic_eigenfunction(cfg.id(), cfg.params, cfg.level, grid);
    o.overlap_with_analytic = overlap(psi.values, ana.values);
  }
  psi.normalize_peak();
  o.table.columns = {"x", "re_psi", "im_psi", "abs_psi"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex z = psi.values[i];
    o.table.rows.push_back({grid.node(i), z.real(), z.imag(), std::abs(z)});
  }
  return o;
}

unsigned sweep_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SUSYPT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = unsigned(v);
  }
  return n;
}

Table bifurcation_table(const RunConfig& cfg, unsigned threads) {
  if (!cfg.sweep) throw ParameterError("bifurcation requires a 'sweep' section in the config");
  if (!is_scarf(cfg.family)) {
    throw DomainError("numeric sweeps support the Scarf families only");
  }
  const Sweep& sw = *cfg.sweep;
  const std::vector<double> pts = sweep_points(sw);
  const Grid grid = cfg.make_grid();

  std::vector<std::vector<std::vector<Cell>>> rows(pts.size());
  std::vector<std::exception_ptr> errors(pts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pts.size(); i = next++) {
      try {
        ParamSet p = cfg.params;
        set_param(p, cfg.family, sw.param, pts[i]);
        const Superpotential w = make_superpotential(cfg.id(), p);
        const GridFunction V = reduced_potential(w, Partner::Minus, grid);
        const auto candidates = bound_state_candidates(eigenvalues(discretize_hamiltonian(V)), V);
        const auto levels = zero_ground_levels(candidates, w);
        const std::string label(to_string(classify_branch(w, cfg.tolerances.pt)));
        for (std::size_t n = 0; n < levels.size(); ++n) {
          rows[i].push_back({pts[i], std::int64_t(n), levels[n].real(), levels[n].imag(), label});
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(threads, unsigned(pts.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  Table t{{"param", "n", "re_E", "im_E", "branch"}, {}};
  for (auto& block : rows) {
    for (auto& r : block) t.rows.push_back(std::move(r));
  }
  return t;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shape-invariant SUSY-QM potentials, PT-symmetric spectra and numeric checks", "susypt"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "susypt 0.1.0");

  std::string config_path, output_path, sign_text, fault;
  bool plus = false, ladder = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--output", output_path, "Output file (overrides the config; default stdout)");
  };
  auto add_sign = [&](CLI::App* sub) {
    sub->add_option("--sign", sign_text, "Sign branch of the Scarf families")
        ->check(CLI::IsMember({"plus", "minus"}));
  };

  CLI::App* potential = app.add_subcommand("potential", "Sample the partner potential: x,re_V,im_V");
  add_common(potential);
  add_sign(potential);
  potential->add_flag("--plus", plus, "Emit V_+ instead of V_-");

  CLI::App* spectrum = app.add_subcommand("spectrum", "Analytic vs numeric bound-state spectrum");
  add_common(spectrum);
  add_sign(spectrum);

  CLI::App* wavefunction = app.add_subcommand("wavefunction", "Eigenfunction of level 'level'");
  add_common(wavefunction);
  add_sign(wavefunction);
  wavefunction->add_flag("--ladder", ladder, "Build the state with raising operators");

  CLI::App* bifurcation = app.add_subcommand("bifurcation", "Numeric levels along a parameter sweep");
  add_common(bifurcation);
  add_sign(bifurcation);

  CLI::App* verify = app.add_subcommand("verify", "Run the invariant suite");
  verify->add_option("--inject-fault", fault, "Test hook")->group("")->check(CLI::IsMember({"param_step"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfigError;
  }

  try {
    if (verify->parsed()) {
      SuiteOptions opts;
      if (fault == "param_step") opts.fault = Fault::WrongParamStep;
      const SuiteReport rep = run_invariant_suite(opts);
      std::size_t width = 0;
      for (const auto& c : rep.checks) width = std::max(width, c.name.size());
      for (const auto& c : rep.checks) {
        out << (c.passed ? "PASS  " : "FAIL  ") << c.name << std::string(width + 2 - c.name.size(), ' ')
            << c.detail << '\n';
      }
      out << arbitration_line(rep.arbitration) << '\n';
      for (const auto& f : rep.findings) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3g", f.residual);
        out << (f.discrepancy ? "finding: printed-form discrepancy: " : "finding: printed form consistent: ")
            << f.form << " n=" << f.n << ", residual " << buf << (f.discrepancy ? " >= " : " < ")
            << kEigenResidualLimit << '\n';
      }
      const std::size_t failed = std::size_t(
          std::count_if(rep.checks.begin(), rep.checks.end(), [](const CheckResult& c) { return !c.passed; }));
      out << (failed == 0 ? "all " + std::to_string(rep.checks.size()) + " checks passed"
                          : std::to_string(failed) + " of " + std::to_string(rep.checks.size()) + " checks failed")
          << '\n';
      return failed == 0 ? kExitOk : kExitVerifyFailed;
    }

    RunConfig cfg = load_config(config_path);
    if (!sign_text.empty()) cfg.sign = sign_text == "plus" ? SignBranch::Plus : SignBranch::Minus;
    Emitter emit(out, err, output_path.empty() ? cfg.output : output_path);

    if (potential->parsed()) {
      emit.write(cfg, potential_table(cfg, plus), config_meta(cfg, "potential"));
      return kExitOk;
    }
    if (spectrum->parsed()) {
      const SpectrumOutcome o = spectrum_table(cfg);
      nlohmann::json meta = config_meta(cfg, "spectrum");
      meta["branch"] = std::string(to_string(o.branch));
      meta["convention"] = cfg.convention;
      meta["all_matched"] = o.all_matched;
      emit.write(cfg, o.table, meta);
      emit.info() << "branch: " << to_string(o.branch) << '\n';
      if (!o.numeric_available) {
        emit.info() << "note: numeric check not available for half-line families; analytic levels only\n";
      } else {
        emit.info() << "continuum artifacts discarded: " << o.artifacts_discarded << '\n';
      }
      if (!o.all_matched) {
        err << "error: not all levels matched within " << cfg.tolerances.match << '\n';
        return kExitVerifyFailed;
      }
      return kExitOk;
    }
    if (wavefunction->parsed()) {
      const WavefunctionOutcome o = wavefunction_table(cfg, ladder);
      nlohmann::json meta = config_meta(cfg, "wavefunction");
      meta["level"] = cfg.level;
      meta["method"] = ladder ? "ladder" : "analytic";
      if (o.overlap_with_analytic) meta["overlap_with_analytic"] = *o.overlap_with_analytic;
      emit.write(cfg, o.table, meta);
      if (o.overlap_with_analytic) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12f", *o.overlap_with_analytic);
        emit.info() << "overlap with analytic eigenfunction: " << buf << '\n';
      }
      return kExitOk;
    }
    if (bifurcation->parsed()) {
      const Table t = bifurcation_table(cfg, sweep_threads());
      nlohmann::json meta = config_meta(cfg, "bifurcation");
      meta["sweep"] = {{"param", cfg.sweep->param}, {"from", cfg.sweep->from},
                       {"to", cfg.sweep->to}, {"steps", cfg.sweep->steps}};
      emit.write(cfg, t, meta);
      return kExitOk;
    }
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: invalid config: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
  return kExitConfigError;
}

}  // namespace susypt::cli
