#include "susypt/shape_invariance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "susypt/errors.hpp"
#include "susypt/finite_difference.hpp"

namespace susypt {

namespace {

// Fourth-order raising steps should agree with second-order ones to this
// relative level on an adequately resolved grid.
constexpr double kCoarseGridRatio = 0.05;

int ceil_positive(double x) {
  if (!(x > 0.0)) return 0;
  return int(std::ceil(x));
}

std::vector<Complex> difference(std::span<const Complex> a, std::span<const Complex> b) {
  std::vector<Complex> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

}  // namespace

FamilyDescriptor make_descriptor(Family f, int coulomb_level_cap) {
  FamilyDescriptor d;
  d.family = f;
  switch (f) {
    case Family::Scarf2General:
    case Family::Scarf2Real:
    case Family::Scarf2Broken:
      // a -> a - alpha with the sech coefficient fixed
      d.param_step = [](const Superpotential& w) {
        Superpotential next = w;
        next.c1 = w.c1 - w.alpha;
        return next;
      };
      d.remainder = [](const Superpotential& w) {
        const Complex a1 = w.c1 - w.alpha;
        return w.c1 * w.c1 - a1 * a1;
      };
      d.n_max_rule = [](const Superpotential& w) { return ceil_positive(w.c1.real() / w.alpha); };
      break;
    case Family::PoschlTellerC1:
    case Family::PoschlTellerC2:
      // p -> p - alpha, q -> q - alpha keeps both sech^2 and csch^2 patterns
      d.param_step = [](const Superpotential& w) {
        Superpotential next = w;
        next.c1 = w.c1 - w.alpha;
        next.c2 = w.c2 - w.alpha;
        return next;
      };
      d.remainder = [](const Superpotential& w) {
        const Complex s0 = w.c1 + w.c2;
        const Complex s1 = s0 - 2.0 * w.alpha;
        return s0 * s0 - s1 * s1;
      };
      d.n_max_rule = [](const Superpotential& w) {
        return ceil_positive((w.c1 + w.c2).real() / (2.0 * w.alpha));
      };
      break;
    case Family::CoulombComplex:
      // gamma -> gamma - 1, beta -> beta gamma / (gamma - 1)
      d.param_step = [](const Superpotential& w) {
        Superpotential next = w;
        next.c1 = w.c1 - 1.0;
        next.c2 = w.c2 * w.c1 / next.c1;
        return next;
      };
      d.remainder = [](const Superpotential& w) {
        const Complex beta1 = w.c2 * w.c1 / (w.c1 - 1.0);
        return w.c2 * w.c2 - beta1 * beta1;
      };
      d.n_max_rule = [coulomb_level_cap](const Superpotential&) { return coulomb_level_cap; };
      break;
  }
  return d;
}

Superpotential param_step(const FamilyDescriptor& d, const Superpotential& a_k) {
  return d.param_step(a_k);
}

Complex remainder(const FamilyDescriptor& d, const Superpotential& a_prev) {
  return d.remainder(a_prev);
}

int bound_level_count(const FamilyDescriptor& d, const Superpotential& a0) {
  return d.n_max_rule(a0);
}

SpectrumResult to_asymptote_zero(const SpectrumResult& r) {
  if (r.convention.rfind(kConventionAsymptoteZero, 0) == 0) return r;
  SpectrumResult out = r;
  for (Complex& e : out.energies) e += r.offset;
  out.convention = std::string(kConventionAsymptoteZero) + r.convention.substr(kConventionZeroGround.size());
  out.offset = -r.offset;
  return out;
}

SpectrumResult spectrum_by_summation(const FamilyDescriptor& d, const Superpotential& a0,
                                     int n_levels) {
  if (n_levels < 0) throw ParameterError("level count must be non-negative");
  const int n_max = bound_level_count(d, a0);
  if (n_levels > n_max) {
    throw DomainError("requested " + std::to_string(n_levels) + " levels but " +
                      std::string(to_string(d.family)) + " supports n_max = " +
                      std::to_string(n_max) + " bound levels");
  }
  SpectrumResult r;
  r.branch = classify_branch(a0);
  const Complex asym = a0.asymptote();
  r.offset = -(asym * asym);
  r.energies.reserve(std::size_t(n_levels));
  Superpotential a = a0;
  Complex e = 0.0;
  for (int n = 0; n < n_levels; ++n) {
    if (n > 0) {
      e += remainder(d, a);
      a = param_step(d, a);
    }
    r.energies.push_back(e);
  }
  return r;
}

SpectrumResult closed_form_spectrum(FamilyId id, const ParamSet& p, int n_levels) {
  if (n_levels < 0) throw ParameterError("level count must be non-negative");
  const Superpotential w = make_superpotential(id, p);
  SpectrumResult r;
  const Complex asym = w.asymptote();
  r.offset = -(asym * asym);
  r.energies.resize(std::size_t(n_levels));

  switch (id.family) {
    case Family::Scarf2Real:
    case Family::Scarf2Broken: {
      // 2n(A +- iC) alpha - n^2 alpha^2; the imaginary part is n * (2 C alpha) exactly
      const double sgn = id.branch == SignBranch::Plus ? 1.0 : -1.0;
      const double c = id.family == Family::Scarf2Real ? 0.0 : p.C_pt;
      const double im_step = 2.0 * sgn * c * p.alpha;
      for (int n = 0; n < n_levels; ++n) {
        const double nd = n;
        r.energies[n] = Complex(2.0 * nd * p.A * p.alpha - nd * nd * p.alpha * p.alpha, nd * im_step);
      }
      r.branch = classify_branch(id.family == Family::Scarf2Real ? ParamSet::scarf_real(p.A, p.B, p.alpha) : p);
      if (id.family == Family::Scarf2Broken) {
        r.convention = std::string(kConventionZeroGround) + "; n^2 term -(n alpha)^2 (numerically arbitrated)";
      }
      break;
    }
    case Family::PoschlTellerC1:
    case Family::PoschlTellerC2: {
      // (p+q)^2 - (p+q-2n alpha)^2 = 4n alpha (p+q) - 4 n^2 alpha^2
      const Complex s = w.c1 + w.c2;
      const double im_step = 4.0 * p.alpha * s.imag();
      for (int n = 0; n < n_levels; ++n) {
        const double nd = n;
        r.energies[n] = Complex(4.0 * nd * p.alpha * s.real() - 4.0 * nd * nd * p.alpha * p.alpha,
                                nd * im_step);
      }
      r.branch = BranchLabel::NonPT;
      break;
    }
    case Family::CoulombComplex: {
      // beta^2 (1 - gamma^2 / (gamma - n)^2)
      const Complex gamma = w.c1;
      const Complex beta = w.c2;
      for (int n = 0; n < n_levels; ++n) {
        const Complex ratio = gamma / (gamma - double(n));
        r.energies[n] = beta * beta * (1.0 - ratio * ratio);
      }
      r.branch = BranchLabel::NonPT;
      break;
    }
    case Family::Scarf2General:
      throw DomainError("no closed-form spectrum for Scarf2General; use spectrum_by_summation");
  }
  return r;
}

double shape_invariance_residual(const FamilyDescriptor& d, const Superpotential& a0,
                                 const Grid& grid) {
  const Superpotential a1 = param_step(d, a0);
  const Complex R = remainder(d, a0);
  const GridFunction v_plus = potential(a0, Partner::Plus, grid);
  const GridFunction v_minus = potential(a1, Partner::Minus, grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(worst, std::abs(v_plus.values[i] - v_minus.values[i] - R));
  }
  return worst;
}

GridFunction ladder_state(const FamilyDescriptor& d, const Superpotential& a0, int n,
                          const Grid& grid) {
  if (n < 0) throw ParameterError("level index must be non-negative");
  const int n_max = bound_level_count(d, a0);
  if (n >= n_max) {
    throw DomainError("level " + std::to_string(n) + " is not bound; n_max = " +
                      std::to_string(n_max) + " levels");
  }
  std::vector<Superpotential> chain{a0};
  for (int k = 0; k < n; ++k) chain.push_back(param_step(d, chain.back()));

  GridFunction psi = ground_state(chain.back(), grid);
  for (int k = n - 1; k >= 0; --k) {
    const auto d4 = derivative4(psi.values, grid.spacing());
    const auto d2 = derivative2(psi.values, grid.spacing());
    const double scale = norm2(d4);
    if (scale > 0.0 && norm2(difference(d4, d2)) > kCoarseGridRatio * scale) {
      throw DomainError("grid too coarse for the raising operator (h = " +
                        std::to_string(grid.spacing()) + ")");
    }
    psi = apply_raising(chain[std::size_t(k)], psi);
    psi.normalize_peak();
  }
  psi.normalize_peak();
  return psi;
}

GridFunction tanh_sech_eigenfunction(const Superpotential& w, int n, const Grid& grid) {
  if (w.shape != Shape::TanhSech) throw DomainError("closed-form eigenfunction needs tanh-sech shape");
  if (n < 0) throw ParameterError("level index must be non-negative");
  require_in_domain(w, grid);
  const double al = w.alpha;
  const Complex a = w.c1;
  const Complex ib = kI * w.c2;
  const Complex jc = -(ib + a) / al - 0.5;
  const Complex jd = (ib - a) / al - 0.5;

  std::vector<Complex> prefactor(grid.size());
  std::vector<Complex> poly(grid.size());
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double y = al * grid.node(i);
    prefactor[i] = w.log_ground_state(grid.node(i));
    poly[i] = jacobi_poly_robust(n, jc, jd, Complex(0.0, std::sinh(y)));
    if (poly[i] != 0.0) peak = std::max(peak, prefactor[i].real() + std::log(std::abs(poly[i])));
  }
  std::vector<Complex> psi(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    // split the exponent so neither factor overflows on its own
    const double lp = poly[i] == 0.0 ? 0.0 : std::log(std::abs(poly[i]));
    const Complex unit = poly[i] == 0.0 ? Complex(0.0) : poly[i] / std::abs(poly[i]);
    psi[i] = std::exp(prefactor[i] + lp - peak) * unit;
  }
  return GridFunction(grid, std::move(psi));
}

GridFunction analytic_eigenfunction(FamilyId id, const ParamSet& p, int n, const Grid& grid) {
  if (id.family != Family::Scarf2Real && id.family != Family::Scarf2Broken) {
    throw DomainError("analytic eigenfunctions exist for Scarf2Real and Scarf2Broken only");
  }
  const Superpotential w = make_superpotential(id, p);
  const int n_max = bound_level_count(make_descriptor(id.family), w);
  if (n >= n_max) {
    throw DomainError("level " + std::to_string(n) + " is not bound; n_max = " +
                      std::to_string(n_max) + " levels");
  }
  return tanh_sech_eigenfunction(w, n, grid);
}

}  // namespace susypt
