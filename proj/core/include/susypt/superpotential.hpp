#pragma once

// Superpotential families, their closed-form W and W', the partner potentials
// V_{-/+} = W^2 -/+ W', and the SUSY ground state psi_0 = exp(-int W).

#include <optional>
#include <string>
#include <string_view>

#include "susypt/complex_special.hpp"

namespace susypt {

enum class Family {
  Scarf2General,   // (A +- iC) tanh + (+-C + iB) sech
  Scarf2Real,      // A tanh + iB sech
  Scarf2Broken,    // general form restricted to B = A + alpha/2
  PoschlTellerC1,  // A tanh + iB coth, half line
  PoschlTellerC2,  // iA tanh + B coth, half line
  CoulombComplex,  // i alpha_c / r + beta, half line
};

enum class SignBranch { Plus, Minus };

/// Which partner of the SUSY pair: V_- = W^2 - W' (H_- = A^dag A) or V_+ = W^2 + W'.
enum class Partner { Minus, Plus };

struct FamilyId {
  Family family = Family::Scarf2Real;
  SignBranch branch = SignBranch::Plus;  // ignored for families without a +- structure

  friend bool operator==(const FamilyId&, const FamilyId&) = default;
};

std::string_view to_string(Family f) noexcept;
std::string_view to_string(SignBranch s) noexcept;
std::optional<Family> parse_family(std::string_view name) noexcept;

bool has_sign_branch(Family f) noexcept;
bool is_half_line(Family f) noexcept;
bool is_scarf(Family f) noexcept;

/// Real parameters of every family. Scarf II and Poschl-Teller families use
/// (A, B, C_pt, alpha); the Coulomb family uses (alpha_c, beta).
struct ParamSet {
  double A = 0.0;
  double B = 0.0;
  double C_pt = 0.0;
  double alpha = 1.0;
  double alpha_c = 0.0;
  double beta = 0.0;

  static ParamSet scarf(double A, double B, double C_pt, double alpha);
  static ParamSet scarf_real(double A, double B, double alpha);
  /// Puts the parameters on the constraint surface B = A + alpha/2.
  static ParamSet scarf_broken(double A, double C_pt, double alpha);
  static ParamSet poschl_teller(double A, double B, double alpha);
  static ParamSet coulomb(double alpha_c, double beta);
};

/// Throws ParameterError if `p` violates an invariant of `f`
/// (alpha > 0, B = A + alpha/2 for the broken branch, beta > 0 for Coulomb).
void validate(Family f, const ParamSet& p);

struct DomainSpec {
  enum class Kind { FullLine, HalfLine };

  Kind kind = Kind::FullLine;
  double epsilon = 0.0;  // inner Dirichlet cutoff on the half line

  static DomainSpec full_line() noexcept { return {Kind::FullLine, 0.0}; }
  static DomainSpec half_line(double epsilon = 1e-3);

  bool contains(double x) const noexcept;
};

DomainSpec default_domain(Family f);

/// Functional form shared by the families: W = c1 f1(x) + c2 f2(x).
enum class Shape {
  TanhSech,  // c1 tanh(ax) + c2 sech(ax)
  TanhCoth,  // c1 tanh(ax) + c2 coth(ax)
  Coulomb,   // c1 / r + c2
};

/// One member of a shape-invariant hierarchy: a fully specified complex
/// superpotential. Parameter maps act on these coefficients, which stay
/// complex even when the originating ParamSet is real.
struct Superpotential {
  FamilyId id;
  Shape shape = Shape::TanhSech;
  Complex c1;
  Complex c2;
  double alpha = 1.0;  // hyperbolic scale; unused by the Coulomb shape
  DomainSpec domain;

  Complex W(double x) const;
  Complex W_prime(double x) const;
  /// lim_{x -> +inf} W(x).
  Complex asymptote() const noexcept;
  /// -int^x W, fixed by the closed-form antiderivative (up to a constant).
  Complex log_ground_state(double x) const;
};

Superpotential make_superpotential(FamilyId id, const ParamSet& p);
Superpotential make_superpotential(FamilyId id, const ParamSet& p, DomainSpec domain);

Complex eval_W(FamilyId id, const ParamSet& p, double x);
Complex eval_W_prime(FamilyId id, const ParamSet& p, double x);

/// Samples V_partner = W^2 +- W' on every node.
GridFunction potential(const Superpotential& w, Partner partner, const Grid& grid);
GridFunction potential(FamilyId id, const ParamSet& p, Partner partner, const Grid& grid);

/// potential() minus the constant (lim W)^2, i.e. the partner potential
/// normalized to vanish at +infinity. Energies shift by the same constant
/// (see SpectrumResult::offset).
GridFunction reduced_potential(const Superpotential& w, Partner partner, const Grid& grid);
GridFunction reduced_potential(FamilyId id, const ParamSet& p, Partner partner, const Grid& grid);

/// Unnormalized SUSY ground state exp(-int W) scaled to max |psi_0| = 1.
/// Throws DomainError("grid too small for bound state") when |psi_0| at an
/// outer boundary exceeds 1e-8 of its peak, or if the state cannot decay.
GridFunction ground_state(const Superpotential& w, const Grid& grid);
GridFunction ground_state(FamilyId id, const ParamSet& p, const Grid& grid);

/// Throws DomainError when any grid node lies outside the domain.
void require_in_domain(const Superpotential& w, const Grid& grid);

}  // namespace susypt
