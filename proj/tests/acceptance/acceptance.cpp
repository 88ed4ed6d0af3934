// Acceptance run: one PASS/FAIL line per criterion, indented notes below.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "susypt/complex_special.hpp"
#include "susypt/pt_analysis.hpp"
#include "susypt/shape_invariance.hpp"
#include "susypt/spectral_solver.hpp"
#include "susypt/superpotential.hpp"
#include "susypt/verification.hpp"

using namespace susypt;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> notes;
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const Grid kDesk = Grid::uniform(-14, 14, 701);

std::vector<Complex> reduced_candidates(const Superpotential& w, const Grid& g, Partner side = Partner::Minus) {
  const GridFunction V = reduced_potential(w, side, g);
  return bound_state_candidates(eigenvalues(discretize_hamiltonian(V)), V);
}

Complex fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Criterion 1
Outcome real_branch_spectrum() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const FamilyId id{Family::Scarf2Real};
  const ParamSet p = ParamSet::scarf_real(2.5, 0.5, 1);
  const auto w = make_superpotential(id, p);
  const auto analytic = closed_form_spectrum(id, p, bound_level_count(make_descriptor(Family::Scarf2Real), w));

  // closed form {0, 4, 6}; shifted back it is -(n alpha - A)^2
  const double expected[] = {0, 4, 6}, printed[] = {-6.25, -2.25, -0.25};
  bool closed_ok = analytic.energies.size() == 3;
  for (std::size_t n = 0; closed_ok && n < 3; ++n) {
    closed_ok = std::abs(analytic.energies[n] - expected[n]) < 1e-12 &&
                std::abs(analytic.energies[n] + analytic.offset - printed[n]) < 1e-12;
  }

  const auto kept = reduced_candidates(w, kDesk);
  const double scale = std::abs(analytic.offset);
  double worst_im = 0, worst_re = 0;
  for (const Complex& e : kept) worst_im = std::max(worst_im, std::abs(e.imag()));
  const bool count_ok = kept.size() == 3;
  for (std::size_t n = 0; count_ok && n < 3; ++n) {
    worst_re = std::max(worst_re, std::abs(kept[n].real() - analytic.offset.real() - expected[n]));
  }
  const double t = seconds_since(t0);
  o.pass = closed_ok && count_ok && worst_im < 1e-6 * scale && worst_re < 1e-2 && t < 60;
  o.detail = fmt("%zu bound levels (expected 3), max|Re err| %.2e < 1e-2, max|Im| %.2e < %.2e, %.1f s", kept.size(),
                 worst_re, worst_im, 1e-6 * scale, t);
  if (count_ok) {
    o.notes.push_back(fmt("numeric E0=0 levels: %.5f, %.5f, %.5f", kept[0].real() - analytic.offset.real(),
                          kept[1].real() - analytic.offset.real(), kept[2].real() - analytic.offset.real()));
  }
  return o;
}

struct BrokenRun {
  std::vector<Complex> candidates;
  PairingResult pairing;
  std::vector<Complex> plus, minus;  // E0=0 levels per branch
  SignArbitration arbitration;
};

BrokenRun broken_run(double A) {
  BrokenRun r;
  const ParamSet p = ParamSet::scarf_broken(A, 0.75, 1);
  const auto wp = make_superpotential({Family::Scarf2Broken, SignBranch::Plus}, p);
  const auto wm = make_superpotential({Family::Scarf2Broken, SignBranch::Minus}, p);
  r.candidates = reduced_candidates(wp, kDesk);
  r.pairing = cc_pair_check(r.candidates, 1e-2);
  r.plus = zero_ground_levels(r.candidates, wp);
  r.minus = zero_ground_levels(r.candidates, wm);
  r.arbitration = arbitrate_cc_n2_sign(p, kDesk);
  return r;
}

// worst relative deviation of Im E_n from n * Im E_1
double equispacing_error(const std::vector<Complex>& levels) {
  double worst = 0;
  for (std::size_t n = 2; n < levels.size(); ++n) {
    worst = std::max(worst, std::abs(levels[n].imag() - double(n) * levels[1].imag()) / std::abs(double(n) * levels[1].imag()));
  }
  return worst;
}

// Criterion 2
Outcome cc_branch_spectrum() {
  Outcome o;
  const BrokenRun r = broken_run(1.0);
  std::size_t real_levels = 0;
  for (const Complex& e : r.candidates) real_levels += std::abs(e.imag()) < 1e-8;

  const bool have_e1 = r.plus.size() > 1 && r.minus.size() > 1;
  const bool have_e2 = r.plus.size() > 2;
  bool im_ok = false;
  double im_plus = NAN, im_minus = NAN, eq = NAN;
  if (have_e1) {
    im_plus = r.plus[1].imag();
    im_minus = r.minus[1].imag();
    im_ok = std::abs(im_plus - 1.5) < 0.075 && std::abs(im_minus + 1.5) < 0.075;
  }
  if (have_e2) eq = equispacing_error(r.plus);
  o.pass = r.pairing.closed && have_e1 && im_ok && have_e2 && eq < 0.05;
  o.detail = fmt("A=1: %zu bound eigenvalues, conjugate pairing %s, real levels %zu; ", r.candidates.size(),
                 r.pairing.closed ? "closed" : "open", real_levels);
  if (!have_e1) {
    o.detail += "E1 not bound (only the n=0 pair exists), Im E1 and equispacing not measurable";
  } else {
    o.detail += fmt("Im E1 = %+.4f / %+.4f", im_plus, im_minus);
  }
  for (const Complex& e : r.candidates) o.notes.push_back(fmt("A=1 reduced bound eigenvalue %.5f %+.5fi", e.real(), e.imag()));
  o.notes.push_back("A=1 " + arbitration_line(r.arbitration));

  const BrokenRun big = broken_run(3.0);
  if (big.plus.size() > 2 && big.minus.size() > 1) {
    o.notes.push_back(fmt("A=3 supplementary: %zu eigenvalues, pairing %s, Im E1 = %+.4f / %+.4f (%.2f%% off 1.5), "
                          "equispacing deviation %.2f%%",
                          big.candidates.size(), big.pairing.closed ? "closed" : "open", big.plus[1].imag(),
                          big.minus[1].imag(), 100 * std::abs(big.plus[1].imag() - 1.5) / 1.5,
                          100 * equispacing_error(big.plus)));
  }
  o.notes.push_back("A=3 " + arbitration_line(big.arbitration) +
                    fmt(" [err with -: %.2e, with +: %.2e]", big.arbitration.err_minus, big.arbitration.err_plus));
  return o;
}

// Criterion 3
Outcome bifurcation_sweep() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const double A = 2.0, alpha = 1.0;
  std::vector<double> c, im_plus, im_minus;
  double im_at_zero = 0;
  for (int k = 0; k <= 20; ++k) {
    const ParamSet p = ParamSet::scarf_broken(A, k / 20.0, alpha);
    const auto wp = make_superpotential({Family::Scarf2Broken, SignBranch::Plus}, p);
    const auto wm = make_superpotential({Family::Scarf2Broken, SignBranch::Minus}, p);
    const auto kept = reduced_candidates(wp, kDesk);
    const auto lp = zero_ground_levels(kept, wp), lm = zero_ground_levels(kept, wm);
    if (lp.size() < 2 || lm.size() < 2) {
      o.pass = false;
      o.detail = fmt("E1 lost at C_pt = %.2f", k / 20.0);
      return o;
    }
    c.push_back(k / 20.0);
    im_plus.push_back(lp[1].imag());
    im_minus.push_back(lm[1].imag());
    if (k == 0) {
      for (const Complex& e : lp) im_at_zero = std::max(im_at_zero, std::abs(e.imag()));
      for (const Complex& e : lm) im_at_zero = std::max(im_at_zero, std::abs(e.imag()));
    }
  }
  const double sp = fit_slope(c, im_plus).real(), sm = fit_slope(c, im_minus).real();
  const double scale = A * A;
  const double t = seconds_since(t0);
  const bool slope_ok = std::abs(sp - 2 * alpha) < 0.2 * alpha && std::abs(sm + 2 * alpha) < 0.2 * alpha;
  const bool zero_ok = im_at_zero < 1e-6 * scale;
  o.pass = slope_ok && zero_ok && t < 600;
  o.detail = fmt("A=2, 21 points: slope %+.4f / %+.4f (2 alpha = 2, 10%% band) %s; max|Im E| at C_pt=0 %.2e vs %.1e %s; %.0f s",
                 sp, sm, slope_ok ? "ok" : "off", im_at_zero, 1e-6 * scale, zero_ok ? "ok" : "exceeded", t);

  // the surface meets C_pt = 0 at the Scarf II exceptional point; show the O(h) split
  const auto w0 = make_superpotential({Family::Scarf2Broken, SignBranch::Plus}, ParamSet::scarf_broken(A, 0, alpha));
  double split_h = 0, split_h2 = 0, below = 0;
  for (const Complex& e : reduced_candidates(w0, kDesk)) split_h = std::max(split_h, std::abs(e.imag()));
  for (const Complex& e : reduced_candidates(w0, Grid::uniform(-14, 14, 1401))) split_h2 = std::max(split_h2, std::abs(e.imag()));
  const auto wb = make_superpotential({Family::Scarf2Real}, ParamSet::scarf_real(A, 2.4, alpha));
  for (const Complex& e : reduced_candidates(wb, kDesk)) below = std::max(below, std::abs(e.imag()));
  o.notes.push_back(fmt("C_pt=0 raw max|Im|: h=0.04 %.4e, h=0.02 %.4e (ratio %.2f, O(h) splitting of a defective pair)",
                        split_h, split_h2, split_h / split_h2));
  o.notes.push_back(fmt("off the exceptional point (B=2.4, C_pt=0) max|Im| = %.1e", below));
  return o;
}

ParamSet random_params(Family f, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.3, 2.5);
  switch (f) {
    case Family::Scarf2General: return ParamSet::scarf(u(rng), u(rng), u(rng), u(rng));
    case Family::Scarf2Real: return ParamSet::scarf_real(u(rng), u(rng), u(rng));
    case Family::Scarf2Broken: return ParamSet::scarf_broken(u(rng), u(rng), u(rng));
    case Family::PoschlTellerC1:
    case Family::PoschlTellerC2: return ParamSet::poschl_teller(u(rng), u(rng), u(rng));
    case Family::CoulombComplex: return ParamSet::coulomb(u(rng), u(rng));
  }
  return {};
}

const Family kFamilies[] = {Family::Scarf2General,  Family::Scarf2Real,     Family::Scarf2Broken,
                            Family::PoschlTellerC1, Family::PoschlTellerC2, Family::CoulombComplex};

// Criterion 4
Outcome shape_invariance_all() {
  Outcome o;
  std::mt19937_64 rng(20260611);
  const Grid full = Grid::uniform(-14, 14, 1000), half = Grid::uniform(1e-3, 40, 1000);
  double worst_all = 0;
  for (Family f : kFamilies) {
    const auto d = make_descriptor(f);
    const Grid& g = is_half_line(f) ? half : full;
    double worst = 0, worst_scaled = 0;
    for (int i = 0; i < 100; ++i) {
      const auto w = make_superpotential({f, i % 2 ? SignBranch::Plus : SignBranch::Minus}, random_params(f, rng));
      const double r = shape_invariance_residual(d, w, g);
      double vmax = 0;
      for (std::size_t k = 0; k < g.size(); ++k) {
        vmax = std::max(vmax, std::norm(w.W(g.node(k))) + std::abs(w.W_prime(g.node(k))));
      }
      worst = std::max(worst, r);
      worst_scaled = std::max(worst_scaled, r / (std::numeric_limits<double>::epsilon() * vmax));
    }
    worst_all = std::max(worst_all, worst);
    o.notes.push_back(fmt("%-15s max residual %.2e (%.1f ulp of max |W^2| + |W'|)", std::string(to_string(f)).c_str(), worst,
                          worst_scaled));
  }
  o.pass = worst_all < 1e-10;
  o.detail = fmt("6 families x 100 parameter sets, 1000 nodes ([-14,14], half-line [1e-3,40]): max residual %.2e vs 1e-10",
                 worst_all);
  return o;
}

// Criterion 5
Outcome ladder_coherence() {
  Outcome o;
  std::mt19937_64 rng(99);
  double worst_sum = 0;
  for (Family f : {Family::Scarf2Real, Family::Scarf2Broken, Family::PoschlTellerC1, Family::PoschlTellerC2,
                   Family::CoulombComplex}) {
    for (int i = 0; i < 100; ++i) {
      const FamilyId id{f, i % 2 ? SignBranch::Plus : SignBranch::Minus};
      ParamSet p = random_params(f, rng);
      if (f == Family::Scarf2Broken) p = ParamSet::scarf_broken(p.A + 2, p.C_pt, p.alpha);
      else if (f != Family::CoulombComplex) p.A += 2;
      const auto w = make_superpotential(id, p);
      const auto d = make_descriptor(f);
      const int n = bound_level_count(d, w);
      const auto s = spectrum_by_summation(d, w, n), c = closed_form_spectrum(id, p, n);
      for (int k = 0; k < n; ++k) worst_sum = std::max(worst_sum, std::abs(s.energies[std::size_t(k)] - c.energies[std::size_t(k)]));
    }
  }

  // V- without its ground level against V+, same reduced frame
  double worst_iso = 0;
  bool counts_ok = true;
  for (const auto& [id, p] : {std::pair{FamilyId{Family::Scarf2Real}, ParamSet::scarf_real(2.5, 0.5, 1)},
                              std::pair{FamilyId{Family::Scarf2Broken, SignBranch::Plus}, ParamSet::scarf_broken(3, 0.75, 1)}}) {
    const auto w = make_superpotential(id, p);
    const auto lm = branch_levels(reduced_candidates(w, kDesk, Partner::Minus), w);
    const auto lp = branch_levels(reduced_candidates(w, kDesk, Partner::Plus), w);
    if (lm.size() != lp.size() + 1) {
      counts_ok = false;
      continue;
    }
    for (std::size_t k = 0; k < lp.size(); ++k) worst_iso = std::max(worst_iso, std::abs(lp[k] - lm[k + 1]));
    o.notes.push_back(fmt("%s: V- has %zu levels, V+ has %zu", std::string(to_string(id.family)).c_str(), lm.size(), lp.size()));
  }

  const Grid fine = Grid::uniform(-30, 30, 6001);
  const double ann = std::max(
      ground_state_annihilation(make_superpotential({Family::Scarf2Real}, ParamSet::scarf_real(1, 1, 1)), fine),
      ground_state_annihilation(
          make_superpotential({Family::Scarf2Broken, SignBranch::Plus}, ParamSet::scarf_broken(1, 0.75, 1)), fine));

  o.pass = worst_sum < 1e-12 && counts_ok && worst_iso < 1e-2 && ann < 1e-4;
  o.detail = fmt("summation vs closed form %.1e < 1e-12; V-/V+ isospectral %.1e < 1e-2%s; annihilation %.1e < 1e-4",
                 worst_sum, worst_iso, counts_ok ? "" : " (level counts differ)", ann);
  return o;
}

struct ResidualSet {
  const char* name;
  FamilyId id;
  ParamSet p;
};

double worst_eigen_residual(const ResidualSet& s, const Grid& g, int levels) {
  const auto V = reduced_potential(s.id, s.p, Partner::Minus, g);
  const auto analytic = to_asymptote_zero(closed_form_spectrum(s.id, s.p, levels));
  double worst = 0;
  for (int n = 0; n < levels; ++n) {
    const auto psi = analytic_eigenfunction(s.id, s.p, n, g);
    worst = std::max(worst, stencil_residual(V, psi, analytic.energies[std::size_t(n)]));
  }
  return worst;
}

// Criterion 6
Outcome eigenfunctions() {
  Outcome o;
  const Grid wide = Grid::uniform(-60, 60, 6001);  // h = 0.02
  const ResidualSet sets[] = {
      {"Scarf2Real", {Family::Scarf2Real}, ParamSet::scarf_real(1.25, 0.25, 0.5)},
      {"Scarf2Broken+", {Family::Scarf2Broken, SignBranch::Plus}, ParamSet::scarf_broken(1.5, 0.375, 0.5)},
      {"Scarf2Broken-", {Family::Scarf2Broken, SignBranch::Minus}, ParamSet::scarf_broken(1.5, 0.375, 0.5)},
  };
  double worst = 0;
  for (const auto& s : sets) {
    const double r = worst_eigen_residual(s, wide, 3);
    worst = std::max(worst, r);
    o.notes.push_back(fmt("%s alpha=0.5, n<=2, h=0.02: residual %.2e", s.name, r));
  }

  // same shapes at alpha = 1 for reference, with h halved to show the O(h^2) floor
  const ResidualSet unit[] = {
      {"Scarf2Real", {Family::Scarf2Real}, ParamSet::scarf_real(2.5, 0.5, 1)},
      {"Scarf2Broken+", {Family::Scarf2Broken, SignBranch::Plus}, ParamSet::scarf_broken(3, 0.75, 1)},
  };
  for (const auto& s : unit) {
    const double r1 = worst_eigen_residual(s, Grid::uniform(-30, 30, 3001), 3);
    const double r2 = worst_eigen_residual(s, Grid::uniform(-30, 30, 6001), 3);
    o.notes.push_back(fmt("%s alpha=1, n<=2: residual %.2e at h=0.02, %.2e at h=0.01 (ratio %.2f)", s.name, r1, r2, r1 / r2));
  }

  const Grid lg = Grid::uniform(-20, 20, 2001);
  double ov = 1;
  for (const auto& s : {ResidualSet{"", {Family::Scarf2Real}, ParamSet::scarf_real(2.5, 0.5, 1)},
                        ResidualSet{"", {Family::Scarf2Broken, SignBranch::Plus}, ParamSet::scarf_broken(3, 0.75, 1)}}) {
    const auto w = make_superpotential(s.id, s.p);
    ov = std::min(ov, overlap(ladder_state(make_descriptor(s.id.family), w, 1, lg).values,
                              analytic_eigenfunction(s.id, s.p, 1, lg).values));
  }

  std::size_t flagged = 0, failing = 0;
  for (const auto& s : sets) {
    for (const auto& f : printed_form_findings(s.id, s.p, wide)) {
      failing += f.residual >= kEigenResidualLimit;
      flagged += f.discrepancy;
      if (f.discrepancy) o.notes.push_back(fmt("printed-form discrepancy: %s n=%d residual %.2e", f.form.c_str(), f.n, f.residual));
    }
  }
  o.pass = worst < 1e-3 && ov > 1 - 1e-4 && flagged == failing;
  o.detail = fmt("analytic psi_n (n<=2, both branches) residual %.2e vs 1e-3 at h=0.02; ladder overlap n=1 %.8f; "
                 "%zu printed-form findings reported for %zu failing forms",
                 worst, ov, flagged, failing);
  return o;
}

// Criterion 7
Outcome oracle_suites() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  double eig_err = 0;
  for (std::size_t n = 2; n <= 8; ++n) {
    for (int t = 0; t < 5; ++t) {
      std::vector<Complex> a(n * n);
      for (auto& v : a) v = {g(rng), g(rng)};
      const auto roots = oracle::poly_roots(oracle::characteristic_polynomial(a, n));
      eig_err = std::max(eig_err, oracle::multiset_distance(eigenvalues(DenseComplexMatrix(n, a)), roots));
    }
  }

  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double jac_err = 0;
  for (int t = 0; t < 1100; ++t) {
    const int n = t % 11;
    const Complex a{u(rng), u(rng)}, b{u(rng), u(rng)}, z{u(rng), u(rng)};
    const Complex ref = oracle::jacobi_hypergeometric(n, a, b, z);
    jac_err = std::max(jac_err, std::abs(jacobi_poly(n, a, b, z) - ref) / std::max(1.0, std::abs(ref)));
  }

  std::vector<double> errs;
  for (std::size_t np : {51u, 101u, 201u}) {
    const Grid box = Grid::uniform(0, std::numbers::pi, np);
    auto ev = eigenvalues(discretize_hamiltonian(GridFunction(box, std::vector<Complex>(np, 0.0))));
    std::sort(ev.begin(), ev.end(), [](Complex x, Complex y) { return x.real() < y.real(); });
    double e = 0;
    for (int k = 0; k < 3; ++k) e = std::max(e, std::abs(ev[std::size_t(k)] - double((k + 1) * (k + 1))));
    errs.push_back(e);
  }
  const double r1 = errs[0] / errs[1], r2 = errs[1] / errs[2];
  o.pass = eig_err < 1e-8 && jac_err < 1e-12 && std::abs(r1 - 4) < 0.5 && std::abs(r2 - 4) < 0.5;
  o.detail = fmt("eigenvalues vs char-poly roots (order 2..8) %.1e < 1e-8; jacobi vs series (n<=10) %.1e < 1e-12; "
                 "well error ratios %.3f, %.3f",
                 eig_err, jac_err, r1, r2);
  return o;
}

// Criterion 8
Outcome pt_classification() {
  Outcome o;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.3, 2.5);
  const Grid g = Grid::uniform(-12, 12, 481);
  double on_dev = 0, off_min = INFINITY;
  bool on_ok = true, off_ok = true;
  for (int i = 0; i < 50; ++i) {
    const auto Vr = reduced_potential({Family::Scarf2Real}, ParamSet::scarf_real(u(rng), u(rng), u(rng)), Partner::Minus, g);
    const auto rr = pt_check(Vr);
    const auto Vb = reduced_potential({Family::Scarf2Broken, i % 2 ? SignBranch::Plus : SignBranch::Minus},
                                      ParamSet::scarf_broken(u(rng), u(rng), u(rng)), Partner::Minus, g);
    const auto rb = pt_check(Vb);
    on_ok = on_ok && rr.is_pt && rb.is_pt;
    on_dev = std::max({on_dev, rr.max_deviation, rb.max_deviation});

    const double A = u(rng), al = u(rng);
    const double B = A + al / 2 + (i % 2 ? 0.3 : -0.3) * u(rng);
    const auto Vo = reduced_potential({Family::Scarf2General, SignBranch::Plus}, ParamSet::scarf(A, B, u(rng), al),
                                      Partner::Minus, g);
    const auto ro = pt_check(Vo);
    off_ok = off_ok && !ro.is_pt;
    off_min = std::min(off_min, ro.max_deviation);
  }

  // lattice: label rule from the condition and parity of the sampled potential
  int mismatches = 0, total = 0, real = 0, cc = 0, nonpt = 0;
  const Grid lg = Grid::uniform(-10, 10, 201);
  for (int ia = 1; ia <= 10; ++ia)
    for (int ib = 1; ib <= 10; ++ib)
      for (int ic = 0; ic < 10; ++ic) {
        const double A = 0.5 * ia, B = 0.5 * ib, C = 0.25 * ic, al = 1.0;
        const ParamSet p = ParamSet::scarf(A, B, C, al);
        const BranchLabel label = classify_branch(p);
        const BranchLabel expect = C == 0   ? BranchLabel::RealSpectrum
                                   : B - A == al / 2 ? BranchLabel::ComplexConjugate
                                                     : BranchLabel::NonPT;
        const bool parity = pt_check(reduced_potential({Family::Scarf2General, SignBranch::Plus}, p, Partner::Minus, lg)).is_pt;
        const bool residual_ok = std::abs(bifurcation_residual(p) - C * (2 * (A - B) + al)) < 1e-12;
        mismatches += label != expect || parity != (expect != BranchLabel::NonPT) || !residual_ok;
        ++total;
        real += expect == BranchLabel::RealSpectrum;
        cc += expect == BranchLabel::ComplexConjugate;
        nonpt += expect == BranchLabel::NonPT;
      }
  o.pass = on_ok && on_dev < 1e-10 && off_ok && mismatches == 0;
  o.detail = fmt("on-branch max deviation %.1e < 1e-10, off-branch min deviation %.2e; lattice %d/%d agree "
                 "(%d real, %d CC, %d non-PT)",
                 on_dev, off_min, total - mismatches, total, real, cc, nonpt);
  return o;
}

// Criterion 9
Outcome coulomb() {
  Outcome o;
  const FamilyId id{Family::CoulombComplex};
  const ParamSet p = ParamSet::coulomb(1, 1);
  const auto w = make_superpotential(id, p);
  const Complex s = spectrum_by_summation(make_descriptor(Family::CoulombComplex), w, 2).energies[1];
  const Complex c = closed_form_spectrum(id, p, 2).energies[1];
  const Complex ref = oracle::coulomb_level(1, 1, 1);
  const double err = std::max({std::abs(s - Complex(1, 0.5)), std::abs(c - Complex(1, 0.5)), std::abs(ref - Complex(1, 0.5))});
  o.pass = err < 1e-12;
  o.detail = fmt("E1 summation %.15g%+.15gi, closed form %.15g%+.15gi, max error %.1e < 1e-12", s.real(), s.imag(),
                 c.real(), c.imag(), err);
  return o;
}

}  // namespace

int main() {
  const struct {
    const char* title;
    std::function<Outcome()> run;
  } criteria[] = {
      {"real-branch spectrum", real_branch_spectrum},
      {"complex-conjugate spectrum", cc_branch_spectrum},
      {"bifurcation sweep", bifurcation_sweep},
      {"shape invariance", shape_invariance_all},
      {"ladder coherence", ladder_coherence},
      {"eigenfunctions", eigenfunctions},
      {"oracle suites", oracle_suites},
      {"PT classification", pt_classification},
      {"Coulomb family", coulomb},
  };
  int failed = 0, k = 0;
  for (const auto& c : criteria) {
    ++k;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    failed += !o.pass;
    std::printf("criterion %d: %s  %s: %s\n", k, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str());
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", k - failed, k);
  return failed;
}
