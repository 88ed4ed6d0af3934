#pragma once

// Shape invariance: V_+(x; a_0) = V_-(x; a_1) + R(a_1) with a_1 = f(a_0).
// The hierarchy built from f and R yields the whole spectrum of H_- and,
// through products of raising operators, its eigenfunctions.

#include <functional>
#include <string>
#include <vector>

#include "susypt/complex_special.hpp"
#include "susypt/pt_analysis.hpp"
#include "susypt/superpotential.hpp"

namespace susypt {

/// Shape-invariant family: parameter map, remainder, and bound-level count.
/// `remainder(a)` is R(f(a)) = V_+(x; a) - V_-(x; f(a)), i.e. the energy gap
/// gained by stepping from `a` to the next member of the hierarchy.
struct FamilyDescriptor {
  Family family = Family::Scarf2Real;
  std::function<Superpotential(const Superpotential&)> param_step;
  std::function<Complex(const Superpotential&)> remainder;
  std::function<int(const Superpotential&)> n_max_rule;  // number of bound levels
};

inline constexpr int kDefaultCoulombLevelCap = 5;

FamilyDescriptor make_descriptor(Family f, int coulomb_level_cap = kDefaultCoulombLevelCap);

Superpotential param_step(const FamilyDescriptor& d, const Superpotential& a_k);
Complex remainder(const FamilyDescriptor& d, const Superpotential& a_prev);
int bound_level_count(const FamilyDescriptor& d, const Superpotential& a0);

inline constexpr std::string_view kConventionZeroGround = "E0=0";
inline constexpr std::string_view kConventionAsymptoteZero = "asymptote-zero";

/// Energies of H_- = A^dag A (ground level at zero). `offset` is the shift to
/// the convention where the partner potential vanishes at +infinity:
/// E_reduced = energies[n] + offset, with offset = -(lim W)^2.
struct SpectrumResult {
  std::vector<Complex> energies;
  BranchLabel branch = BranchLabel::NonPT;
  std::string convention{kConventionZeroGround};
  Complex offset;
};

/// Same levels shifted by `offset`, i.e. measured against a partner potential
/// that vanishes at +infinity. The returned offset undoes the shift.
SpectrumResult to_asymptote_zero(const SpectrumResult& r);

/// energies[n] = sum_{k=1..n} R(a_k). Throws DomainError listing the bound
/// level count when n_levels exceeds it.
SpectrumResult spectrum_by_summation(const FamilyDescriptor& d, const Superpotential& a0,
                                     int n_levels);

/// Closed forms for Scarf2Real, Scarf2Broken, CoulombComplex and the two
/// complexified Poschl-Teller families. The formulas hold for any n; bound
/// level counts are not enforced here. Throws DomainError for Scarf2General.
SpectrumResult closed_form_spectrum(FamilyId id, const ParamSet& p, int n_levels);

/// max_x |V_+(x; a_0) - V_-(x; a_1) - R(a_1)|.
double shape_invariance_residual(const FamilyDescriptor& d, const Superpotential& a0,
                                 const Grid& grid);

/// psi_n built as A^dag(a_0) ... A^dag(a_{n-1}) psi_0(a_n) with fourth-order
/// differences, scaled to unit peak.
GridFunction ladder_state(const FamilyDescriptor& d, const Superpotential& a0, int n,
                          const Grid& grid);

/// Closed-form eigenfunction of the tanh-sech families (Scarf2Real and
/// Scarf2Broken): sech^{a/alpha} exp(-(b/alpha) gd) P_n^{(c,d)}(i sinh(alpha x))
/// with c = -(ib + a)/alpha - 1/2, d = (ib - a)/alpha - 1/2, scaled to unit
/// peak.
GridFunction analytic_eigenfunction(FamilyId id, const ParamSet& p, int n, const Grid& grid);

/// Same closed form for an arbitrary tanh-sech member of a hierarchy.
GridFunction tanh_sech_eigenfunction(const Superpotential& w, int n, const Grid& grid);

}  // namespace susypt
