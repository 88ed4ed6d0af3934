#include "susypt/pt_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "susypt/errors.hpp"

namespace susypt {

std::string_view to_string(BranchLabel b) noexcept {
  switch (b) {
    case BranchLabel::RealSpectrum: return "RealSpectrum";
    case BranchLabel::ComplexConjugate: return "ComplexConjugate";
    case BranchLabel::NonPT: return "NonPT";
  }
  return "?";
}

PTReport pt_check(const GridFunction& V, double tol) {
  const Grid& g = V.grid;
  if (!g.is_symmetric()) throw ParameterError("parity check requires symmetric grid");
  PTReport r;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Complex v = V.values[i];
    const Complex vm = V.values[g.mirror(i)];
    r.max_deviation = std::max(r.max_deviation, std::abs(v - std::conj(vm)));
    r.even_part_im_max = std::max(r.even_part_im_max, std::abs(0.5 * (v + vm).imag()));
    r.odd_part_re_max = std::max(r.odd_part_re_max, std::abs(0.5 * (v - vm).real()));
  }
  r.is_pt = r.max_deviation <= tol;
  return r;
}

double bifurcation_residual(const ParamSet& p) noexcept {
  return p.C_pt * (2.0 * (p.A - p.B) + p.alpha);
}

BranchLabel classify_branch(const ParamSet& p, double tol) noexcept {
  if (std::abs(p.C_pt) <= tol) return BranchLabel::RealSpectrum;
  if (std::abs(2.0 * (p.A - p.B) + p.alpha) <= tol) return BranchLabel::ComplexConjugate;
  return BranchLabel::NonPT;
}

BranchLabel classify_branch(const Superpotential& w, double tol) noexcept {
  if (w.shape != Shape::TanhSech) return BranchLabel::NonPT;
  // c1 = A +- iC, c2 = +-C + iB
  ParamSet p;
  p.A = w.c1.real();
  p.C_pt = std::abs(w.c1.imag());
  p.B = w.c2.imag();
  p.alpha = w.alpha;
  // c1 and c2 must carry the same C_pt, else the form has no PT structure
  if (std::abs(w.c2.real() - w.c1.imag()) > tol) return BranchLabel::NonPT;
  return classify_branch(p, tol);
}

}  // namespace susypt
