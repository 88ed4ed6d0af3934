#include "susypt_cli/config.hpp"

#include <fstream>
#include <initializer_list>

#include "susypt/errors.hpp"
#include "susypt/shape_invariance.hpp"

namespace susypt::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ParameterError(where + " must be a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) known = known || it.key() == k;
    if (!known) throw ParameterError("unknown key '" + it.key() + "' in " + where);
  }
}

double get_number(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ParameterError(where + "." + key + " must be a number");
  return v.get<double>();
}

int get_int(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ParameterError(where + "." + key + " must be an integer");
  return v.get<int>();
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_string()) throw ParameterError(where + "." + key + " must be a string");
  return v.get<std::string>();
}

}  // namespace

GridSpec default_grid(Family f) {
  if (is_half_line(f)) return {0.01, 40.0, 1000};
  return {-14.0, 14.0, 701};
}

Grid RunConfig::make_grid() const { return Grid::uniform(grid.x_min, grid.x_max, grid.n_points); }

void set_param(ParamSet& p, Family f, const std::string& name, double value) {
  if (name == "A") p.A = value;
  else if (name == "B") p.B = value;
  else if (name == "C_pt") p.C_pt = value;
  else if (name == "alpha") p.alpha = value;
  else if (name == "alpha_c") p.alpha_c = value;
  else if (name == "beta") p.beta = value;
  else throw ParameterError("unknown parameter '" + name + "'");
  if (f == Family::Scarf2Broken && name != "B") p.B = p.A + 0.5 * p.alpha;
}

static RunConfig parse_document(const json& doc) {
  reject_unknown(doc, "config",
                 {"family", "params", "sign", "grid", "levels", "level", "tolerances", "sweep",
                  "output", "format", "convention"});
  RunConfig cfg;
  if (!doc.contains("family")) throw ParameterError("config.family is required");
  const std::string fam = get_string(doc, "family", "config");
  const auto family = parse_family(fam);
  if (!family) throw ParameterError("unknown family '" + fam + "'");
  cfg.family = *family;

  bool has_B = false;
  if (doc.contains("params")) {
    const json& p = doc.at("params");
    reject_unknown(p, "params", {"A", "B", "C_pt", "alpha", "alpha_c", "beta"});
    for (const char* k : {"A", "B", "C_pt", "alpha", "alpha_c", "beta"}) {
      if (!p.contains(k)) continue;
      const double v = get_number(p, k, "params");
      if (std::string(k) == "A") cfg.params.A = v;
      if (std::string(k) == "B") cfg.params.B = v, has_B = true;
      if (std::string(k) == "C_pt") cfg.params.C_pt = v;
      if (std::string(k) == "alpha") cfg.params.alpha = v;
      if (std::string(k) == "alpha_c") cfg.params.alpha_c = v;
      if (std::string(k) == "beta") cfg.params.beta = v;
    }
  }
  if (cfg.family == Family::Scarf2Broken && !has_B) cfg.params.B = cfg.params.A + 0.5 * cfg.params.alpha;
  if (cfg.family == Family::Scarf2Real && cfg.params.C_pt != 0.0) {
    throw ParameterError("Scarf2Real has no C_pt parameter");
  }
  validate(cfg.family, cfg.params);

  if (doc.contains("sign")) {
    const std::string s = get_string(doc, "sign", "config");
    if (s == "plus") cfg.sign = SignBranch::Plus;
    else if (s == "minus") cfg.sign = SignBranch::Minus;
    else throw ParameterError("sign must be 'plus' or 'minus', got '" + s + "'");
  }

  cfg.grid = default_grid(cfg.family);
  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    reject_unknown(g, "grid", {"x_min", "x_max", "n_points"});
    if (g.contains("x_min")) cfg.grid.x_min = get_number(g, "x_min", "grid");
    if (g.contains("x_max")) cfg.grid.x_max = get_number(g, "x_max", "grid");
    if (g.contains("n_points")) {
      const int n = get_int(g, "n_points", "grid");
      if (n < 3) throw ParameterError("grid.n_points must be at least 3");
      cfg.grid.n_points = std::size_t(n);
    }
  }
  (void)cfg.make_grid();  // validates the bounds

  if (doc.contains("levels")) {
    const int n = get_int(doc, "levels", "config");
    if (n < 1) throw ParameterError("levels must be positive");
    cfg.levels = n;
  }
  if (doc.contains("level")) {
    cfg.level = get_int(doc, "level", "config");
    if (cfg.level < 0) throw ParameterError("level must be non-negative");
  }

  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    reject_unknown(t, "tolerances", {"match", "pair", "pt"});
    if (t.contains("match")) cfg.tolerances.match = get_number(t, "match", "tolerances");
    if (t.contains("pair")) cfg.tolerances.pair = get_number(t, "pair", "tolerances");
    if (t.contains("pt")) cfg.tolerances.pt = get_number(t, "pt", "tolerances");
    for (double v : {cfg.tolerances.match, cfg.tolerances.pair, cfg.tolerances.pt}) {
      if (!(v > 0.0)) throw ParameterError("tolerances must be positive");
    }
  }

  if (doc.contains("sweep")) {
    const json& s = doc.at("sweep");
    reject_unknown(s, "sweep", {"param", "from", "to", "steps"});
    Sweep sw;
    sw.param = get_string(s, "param", "sweep");
    sw.from = get_number(s, "from", "sweep");
    sw.to = get_number(s, "to", "sweep");
    if (s.contains("steps")) sw.steps = get_int(s, "steps", "sweep");
    if (sw.steps < 1) throw ParameterError("sweep.steps must be at least 1");
    if (cfg.family == Family::Scarf2Broken && sw.param == "B") {
      throw ParameterError("Scarf2Broken keeps B = A + alpha/2; sweep A, C_pt or alpha instead");
    }
    // every sweep point must be a valid parameter set
    for (double v : {sw.from, sw.to}) {
      ParamSet p = cfg.params;
      set_param(p, cfg.family, sw.param, v);
      validate(cfg.family, p);
    }
    cfg.sweep = sw;
  }

  if (doc.contains("output")) cfg.output = get_string(doc, "output", "config");
  if (doc.contains("format")) {
    const std::string f = get_string(doc, "format", "config");
    if (f == "csv") cfg.format = Format::Csv;
    else if (f == "json") cfg.format = Format::Json;
    else throw ParameterError("format must be 'csv' or 'json', got '" + f + "'");
  }
  if (doc.contains("convention")) {
    cfg.convention = get_string(doc, "convention", "config");
    if (cfg.convention != kConventionZeroGround && cfg.convention != kConventionAsymptoteZero) {
      throw ParameterError("convention must be 'E0=0' or 'asymptote-zero'");
    }
  }
  return cfg;
}

RunConfig parse_config(const json& doc) {
  try {
    return parse_document(doc);
  } catch (const json::exception& e) {
    throw ParameterError(std::string("invalid config: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParameterError("malformed JSON in '" + path + "': " + e.what());
  }
  return parse_config(doc);
}

}  // namespace susypt::cli
