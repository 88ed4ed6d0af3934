#include "susypt/superpotential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "susypt/errors.hpp"

namespace susypt {

namespace {

constexpr double kBrokenConstraintTol = 1e-12;
constexpr double kBoundaryDecay = 1e-8;

double sech(double y) { return 1.0 / std::cosh(y); }

std::string format_x(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::Scarf2General: return "Scarf2General";
    case Family::Scarf2Real: return "Scarf2Real";
    case Family::Scarf2Broken: return "Scarf2Broken";
    case Family::PoschlTellerC1: return "PoschlTellerC1";
    case Family::PoschlTellerC2: return "PoschlTellerC2";
    case Family::CoulombComplex: return "CoulombComplex";
  }
  return "?";
}

std::string_view to_string(SignBranch s) noexcept {
  return s == SignBranch::Plus ? "plus" : "minus";
}

std::optional<Family> parse_family(std::string_view name) noexcept {
  for (Family f : {Family::Scarf2General, Family::Scarf2Real, Family::Scarf2Broken,
                   Family::PoschlTellerC1, Family::PoschlTellerC2, Family::CoulombComplex}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

bool has_sign_branch(Family f) noexcept {
  return f == Family::Scarf2General || f == Family::Scarf2Broken;
}

bool is_half_line(Family f) noexcept {
  return f == Family::PoschlTellerC1 || f == Family::PoschlTellerC2 ||
         f == Family::CoulombComplex;
}

bool is_scarf(Family f) noexcept {
  return f == Family::Scarf2General || f == Family::Scarf2Real || f == Family::Scarf2Broken;
}

ParamSet ParamSet::scarf(double A, double B, double C_pt, double alpha) {
  ParamSet p;
  p.A = A;
  p.B = B;
  p.C_pt = C_pt;
  p.alpha = alpha;
  return p;
}

ParamSet ParamSet::scarf_real(double A, double B, double alpha) { return scarf(A, B, 0.0, alpha); }

ParamSet ParamSet::scarf_broken(double A, double C_pt, double alpha) {
  return scarf(A, A + 0.5 * alpha, C_pt, alpha);
}

ParamSet ParamSet::poschl_teller(double A, double B, double alpha) {
  return scarf(A, B, 0.0, alpha);
}

ParamSet ParamSet::coulomb(double alpha_c, double beta) {
  ParamSet p;
  p.alpha_c = alpha_c;
  p.beta = beta;
  return p;
}

void validate(Family f, const ParamSet& p) {
  for (double v : {p.A, p.B, p.C_pt, p.alpha, p.alpha_c, p.beta}) {
    if (!std::isfinite(v)) throw ParameterError("parameters must be finite");
  }
  if (f == Family::CoulombComplex) {
    if (!(p.beta > 0.0)) throw ParameterError("CoulombComplex requires beta > 0");
    return;
  }
  if (!(p.alpha > 0.0)) throw ParameterError(std::string(to_string(f)) + " requires alpha > 0");
  if (f == Family::Scarf2Broken) {
    const double expected_B = p.A + 0.5 * p.alpha;
    if (std::abs(p.B - expected_B) > kBrokenConstraintTol * std::max(1.0, std::abs(expected_B))) {
      throw ParameterError(
          "Scarf2Broken requires the bifurcation constraint A = B - alpha/2 (B = " +
          format_x(expected_B) + " for the given A and alpha, got B = " + format_x(p.B) + ")");
    }
  }
}

DomainSpec DomainSpec::half_line(double epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("half-line domain requires epsilon > 0");
  return {Kind::HalfLine, epsilon};
}

bool DomainSpec::contains(double x) const noexcept {
  if (!std::isfinite(x)) return false;
  return kind == Kind::FullLine || x >= epsilon;
}

DomainSpec default_domain(Family f) {
  return is_half_line(f) ? DomainSpec::half_line() : DomainSpec::full_line();
}

Complex Superpotential::W(double x) const {
  if (!domain.contains(x)) throw DomainError("x = " + format_x(x) + " outside the family domain");
  switch (shape) {
    case Shape::TanhSech: {
      const double y = alpha * x;
      return c1 * std::tanh(y) + c2 * sech(y);
    }
    case Shape::TanhCoth: {
      const double y = alpha * x;
      return c1 * std::tanh(y) + c2 / std::tanh(y);
    }
    case Shape::Coulomb:
      return c1 / x + c2;
  }
  return {};
}

Complex Superpotential::W_prime(double x) const {
  if (!domain.contains(x)) throw DomainError("x = " + format_x(x) + " outside the family domain");
  switch (shape) {
    case Shape::TanhSech: {
      const double y = alpha * x;
      const double s = sech(y);
      return c1 * (alpha * s * s) - c2 * (alpha * s * std::tanh(y));
    }
    case Shape::TanhCoth: {
      const double y = alpha * x;
      const double s = sech(y);
      const double cs = 1.0 / std::sinh(y);
      return c1 * (alpha * s * s) - c2 * (alpha * cs * cs);
    }
    case Shape::Coulomb:
      return -c1 / (x * x);
  }
  return {};
}

Complex Superpotential::asymptote() const noexcept {
  switch (shape) {
    case Shape::TanhSech: return c1;
    case Shape::TanhCoth: return c1 + c2;
    case Shape::Coulomb: return c2;
  }
  return {};
}

Complex Superpotential::log_ground_state(double x) const {
  if (!domain.contains(x)) throw DomainError("x = " + format_x(x) + " outside the family domain");
  switch (shape) {
    case Shape::TanhSech: {
      // int tanh = log cosh / alpha, int sech = gd / alpha
      const double y = alpha * x;
      return -(c1 / alpha) * log_cosh(y) - (c2 / alpha) * gudermannian(y);
    }
    case Shape::TanhCoth: {
      const double y = alpha * x;
      return -(c1 / alpha) * log_cosh(y) - (c2 / alpha) * log_sinh(y);
    }
    case Shape::Coulomb:
      return -c1 * std::log(x) - c2 * x;
  }
  return {};
}

Superpotential make_superpotential(FamilyId id, const ParamSet& p) {
  return make_superpotential(id, p, default_domain(id.family));
}

Superpotential make_superpotential(FamilyId id, const ParamSet& p, DomainSpec domain) {
  validate(id.family, p);
  if (is_half_line(id.family) && domain.kind != DomainSpec::Kind::HalfLine) {
    throw ParameterError(std::string(to_string(id.family)) + " lives on the half line");
  }
  if (!has_sign_branch(id.family)) id.branch = SignBranch::Plus;
  const double sgn = id.branch == SignBranch::Plus ? 1.0 : -1.0;

  Superpotential w;
  w.id = id;
  w.alpha = p.alpha;
  w.domain = domain;
  switch (id.family) {
    case Family::Scarf2General:
    case Family::Scarf2Broken:
      w.shape = Shape::TanhSech;
      w.c1 = Complex(p.A, sgn * p.C_pt);
      w.c2 = Complex(sgn * p.C_pt, p.B);
      break;
    case Family::Scarf2Real:
      w.shape = Shape::TanhSech;
      w.c1 = Complex(p.A, 0.0);
      w.c2 = Complex(0.0, p.B);
      break;
    case Family::PoschlTellerC1:
      w.shape = Shape::TanhCoth;
      w.c1 = Complex(p.A, 0.0);
      w.c2 = Complex(0.0, p.B);
      break;
    case Family::PoschlTellerC2:
      w.shape = Shape::TanhCoth;
      w.c1 = Complex(0.0, p.A);
      w.c2 = Complex(p.B, 0.0);
      break;
    case Family::CoulombComplex:
      w.shape = Shape::Coulomb;
      w.c1 = Complex(0.0, p.alpha_c);
      w.c2 = Complex(p.beta, 0.0);
      w.alpha = 1.0;
      break;
  }
  return w;
}

Complex eval_W(FamilyId id, const ParamSet& p, double x) {
  return make_superpotential(id, p).W(x);
}

Complex eval_W_prime(FamilyId id, const ParamSet& p, double x) {
  return make_superpotential(id, p).W_prime(x);
}

void require_in_domain(const Superpotential& w, const Grid& grid) {
  if (!w.domain.contains(grid.x_min()) || !w.domain.contains(grid.x_max())) {
    throw DomainError("grid [" + format_x(grid.x_min()) + ", " + format_x(grid.x_max()) +
                      "] leaves the domain of " + std::string(to_string(w.id.family)));
  }
}

GridFunction potential(const Superpotential& w, Partner partner, const Grid& grid) {
  require_in_domain(w, grid);
  const double sgn = partner == Partner::Plus ? 1.0 : -1.0;
  std::vector<Complex> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.node(i);
    const Complex wx = w.W(x);
    v[i] = wx * wx + sgn * w.W_prime(x);
  }
  return GridFunction(grid, std::move(v));
}

GridFunction potential(FamilyId id, const ParamSet& p, Partner partner, const Grid& grid) {
  return potential(make_superpotential(id, p), partner, grid);
}

GridFunction reduced_potential(const Superpotential& w, Partner partner, const Grid& grid) {
  GridFunction v = potential(w, partner, grid);
  const Complex a = w.asymptote();
  const Complex shift = a * a;
  for (auto& z : v.values) z -= shift;
  return v;
}

GridFunction reduced_potential(FamilyId id, const ParamSet& p, Partner partner, const Grid& grid) {
  return reduced_potential(make_superpotential(id, p), partner, grid);
}

GridFunction ground_state(const Superpotential& w, const Grid& grid) {
  require_in_domain(w, grid);
  if (!(w.asymptote().real() > 0.0)) {
    throw DomainError("ground state not normalizable: Re lim W must be positive");
  }
  std::vector<Complex> logs(grid.size());
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    logs[i] = w.log_ground_state(grid.node(i));
    peak = std::max(peak, logs[i].real());
  }
  std::vector<Complex> psi(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) psi[i] = std::exp(logs[i] - peak);

  // The half-line inner edge is a singular point of W, not an outer boundary.
  const bool check_left = w.domain.kind == DomainSpec::Kind::FullLine;
  if ((check_left && std::abs(psi.front()) > kBoundaryDecay) ||
      std::abs(psi.back()) > kBoundaryDecay) {
    throw DomainError("grid too small for bound state");
  }
  return GridFunction(grid, std::move(psi));
}

GridFunction ground_state(FamilyId id, const ParamSet& p, const Grid& grid) {
  return ground_state(make_superpotential(id, p), grid);
}

}  // namespace susypt
