#pragma once

#include <string_view>

#include "susypt/complex_special.hpp"
#include "susypt/superpotential.hpp"

namespace susypt {

enum class BranchLabel { RealSpectrum, ComplexConjugate, NonPT };

std::string_view to_string(BranchLabel b) noexcept;

inline constexpr double kDefaultPtTolerance = 1e-10;

struct PTReport {
  bool is_pt = false;
  double max_deviation = 0.0;    // max |V(x) - conj(V(-x))|
  double even_part_im_max = 0.0; // max |Im (V(x) + V(-x))/2|
  double odd_part_re_max = 0.0;  // max |Re (V(x) - V(-x))/2|
};

/// PT test on a sampled potential: V(x) == conj(V(-x)) at every node.
/// Throws ParameterError("parity check requires symmetric grid") otherwise.
PTReport pt_check(const GridFunction& V, double tol = kDefaultPtTolerance);

/// C_pt * (2(A - B) + alpha).
double bifurcation_residual(const ParamSet& p) noexcept;

/// RealSpectrum if |C_pt| <= tol; ComplexConjugate if |2(A-B)+alpha| <= tol;
/// NonPT otherwise.
BranchLabel classify_branch(const ParamSet& p, double tol = kDefaultPtTolerance) noexcept;

/// Branch of a hierarchy member, read back from its coefficients. Only the
/// tanh-sech shape carries a PT structure; everything else is NonPT.
BranchLabel classify_branch(const Superpotential& w, double tol = kDefaultPtTolerance) noexcept;

}  // namespace susypt
