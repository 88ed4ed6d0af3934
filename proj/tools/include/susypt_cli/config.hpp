#pragma once

// JSON run configuration shared by the CLI subcommands.

#include <cstddef>
#include <optional>
#include <string>

#include <json.hpp>

#include "susypt/superpotential.hpp"

namespace susypt::cli {

enum class Format { Csv, Json };

struct GridSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t n_points = 0;
};

struct Tolerances {
  double match = 1e-2;  // |E_numeric - E_analytic| per level
  double pair = 1e-2;   // conjugate pairing in sweeps
  double pt = 1e-10;    // PT deviation
};

struct Sweep {
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int steps = 1;  // number of sweep points
};

struct RunConfig {
  Family family = Family::Scarf2Real;
  ParamSet params;
  SignBranch sign = SignBranch::Plus;
  GridSpec grid;
  std::optional<int> levels;
  int level = 0;
  Tolerances tolerances;
  std::optional<Sweep> sweep;
  std::string output;
  Format format = Format::Csv;
  std::string convention{"E0=0"};

  FamilyId id() const { return {family, sign}; }
  Grid make_grid() const;
};

/// Default grids: [-14, 14] with 701 nodes on the full line, [0.01, 40] with
/// 1000 nodes on the half line.
GridSpec default_grid(Family f);

/// Parses and validates a config document. Unknown keys, wrong types and
/// parameter sets violating the family invariants raise ParameterError.
/// Scarf2Broken configs without B get B = A + alpha/2.
RunConfig parse_config(const nlohmann::json& doc);

/// Reads a file and parses it; unreadable files and malformed JSON raise
/// ParameterError.
RunConfig load_config(const std::string& path);

/// Writes `value` into the named parameter of `p` ("A", "B", "C_pt", "alpha",
/// "alpha_c", "beta"); keeps B = A + alpha/2 for Scarf2Broken.
void set_param(ParamSet& p, Family f, const std::string& name, double value);

}  // namespace susypt::cli
