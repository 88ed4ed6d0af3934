#pragma once

// The susypt command-line front end. Everything the executable does is
// reachable in-process through run() and the per-command table builders.

#include <optional>
#include <ostream>
#include <string>

#include "susypt/pt_analysis.hpp"
#include "susypt_cli/config.hpp"
#include "susypt_cli/table.hpp"

namespace susypt::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitConfigError = 2,
  kExitRuntimeError = 3,
};

/// Columns x, re_V, im_V: the partner potential normalized to vanish at
/// +infinity (V_- by default, V_+ with `plus`).
Table potential_table(const RunConfig& cfg, bool plus);

struct SpectrumOutcome {
  Table table;
  BranchLabel branch = BranchLabel::NonPT;
  bool all_matched = false;
  bool numeric_available = true;
  int artifacts_discarded = 0;
};

/// Columns n, re_E_analytic, im_E_analytic, re_E_numeric, im_E_numeric,
/// abs_err. Throws DomainError when more levels are requested than bound.
SpectrumOutcome spectrum_table(const RunConfig& cfg);

struct WavefunctionOutcome {
  Table table;
  std::optional<double> overlap_with_analytic;  // set for ladder states of the Scarf families
};

/// Columns x, re_psi, im_psi, abs_psi for level cfg.level, peak modulus 1.
WavefunctionOutcome wavefunction_table(const RunConfig& cfg, bool ladder);

/// Columns param, n, re_E, im_E, branch (numeric E0=0 levels of the chosen
/// sign branch at each sweep point). Points run on up to `threads` threads;
/// rows come out in sweep order.
Table bifurcation_table(const RunConfig& cfg, unsigned threads);

/// SUSYPT_THREADS if set to a positive integer, else the hardware concurrency.
unsigned sweep_threads();

/// Parses argv and runs one subcommand. Diagnostics go to `err`; tables go to
/// the configured output file or to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace susypt::cli
