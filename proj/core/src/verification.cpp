#include "susypt/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>

#include "susypt/errors.hpp"
#include "susypt/finite_difference.hpp"
#include "susypt/pt_analysis.hpp"

namespace susypt {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Tridiagonal operator on the interior nodes: sub[i] = T(i, i-1), dia[i] = T(i, i),
// sup[i] = T(i, i+1).
struct Tridiag {
  std::vector<Complex> sub, dia, sup;

  Complex at(std::size_t i, std::size_t j) const {
    if (i == j) return dia[i];
    if (j + 1 == i) return sub[i];
    if (i + 1 == j) return sup[i];
    return 0.0;
  }
  std::size_t size() const { return dia.size(); }
};

Tridiag hamiltonian_tridiag(const GridFunction& V) {
  const std::size_t n = V.grid.size() - 2;
  const double inv_h2 = 1.0 / (V.grid.spacing() * V.grid.spacing());
  Tridiag t{std::vector<Complex>(n, -inv_h2), std::vector<Complex>(n), std::vector<Complex>(n, -inv_h2)};
  for (std::size_t i = 0; i < n; ++i) t.dia[i] = 2.0 * inv_h2 + V.values[i + 1];
  return t;
}

Tridiag lowering_tridiag(const Superpotential& w, const Grid& g) {
  const std::size_t n = g.size() - 2;
  const double c = 1.0 / (2.0 * g.spacing());
  Tridiag t{std::vector<Complex>(n, -c), std::vector<Complex>(n), std::vector<Complex>(n, c)};
  for (std::size_t i = 0; i < n; ++i) t.dia[i] = w.W(g.node(i + 1));
  return t;
}

Complex product_entry(const Tridiag& a, const Tridiag& b, std::size_t i, std::size_t j) {
  Complex s = 0.0;
  const std::size_t k0 = i == 0 ? 0 : i - 1;
  const std::size_t k1 = std::min(i + 1, a.size() - 1);
  for (std::size_t k = k0; k <= k1; ++k) s += a.at(i, k) * b.at(k, j);
  return s;
}

// Unit-peak function from log|prefactor| plus a polynomial factor, scaled in log space.
GridFunction assemble(const Grid& grid, const std::vector<Complex>& log_pref,
                      const std::vector<Complex>& poly) {
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (poly[i] != 0.0) peak = std::max(peak, log_pref[i].real() + std::log(std::abs(poly[i])));
  }
  std::vector<Complex> psi(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (poly[i] == 0.0) continue;
    const double ap = std::abs(poly[i]);
    psi[i] = std::exp(log_pref[i] + std::log(ap) - peak) * (poly[i] / ap);
  }
  return GridFunction(grid, std::move(psi));
}

// Smallest LU pivot of (M - lambda I) relative to ||M||_F; tiny for eigenvalues.
double min_pivot_ratio(const DenseComplexMatrix& M, Complex lambda) {
  const std::size_t n = M.order();
  std::vector<Complex> a(M.entries().begin(), M.entries().end());
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] -= lambda;
  double smallest = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i * n + k]) > std::abs(a[p * n + k])) p = i;
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
    }
    const Complex piv = a[k * n + k];
    smallest = std::min(smallest, std::abs(piv));
    if (piv == 0.0) continue;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex m = a[i * n + k] / piv;
      for (std::size_t j = k; j < n; ++j) a[i * n + j] -= m * a[k * n + j];
    }
  }
  return smallest / M.frobenius_norm();
}

class Suite {
 public:
  explicit Suite(SuiteReport& r) : report_(r) {}

  void run(const std::string& name, const std::function<std::string(bool&)>& body) {
    CheckResult c;
    c.name = name;
    try {
      bool ok = true;
      c.detail = body(ok);
      c.passed = ok;
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail = std::string("error: ") + e.what();
    }
    report_.checks.push_back(std::move(c));
  }

 private:
  SuiteReport& report_;
};

}  // namespace

std::vector<Complex> solve_bound_states(const GridFunction& V, std::size_t count) {
  const auto raw = eigenvalues(discretize_hamiltonian(V));
  return filter_bound_states(raw, V, count);
}

std::vector<Complex> numeric_reduced_levels(const Superpotential& w, const Grid& grid,
                                            std::size_t count) {
  return solve_bound_states(reduced_potential(w, Partner::Minus, grid), count);
}

std::vector<Complex> branch_levels(std::span<const Complex> reduced, const Superpotential& w,
                                   double imag_tol) {
  double side = (-(w.c1 * w.c1)).imag();
  // real c1 (C = 0): take the side the branch approaches as C -> 0+, which
  // only matters at the exceptional point where a merged pair splits
  if (std::abs(side) <= imag_tol) side = w.id.branch == SignBranch::Plus ? -1.0 : 1.0;
  std::vector<Complex> out;
  for (const Complex& e : reduced) {
    const bool real_level = std::abs(e.imag()) <= imag_tol;
    if (real_level || (e.imag() > 0.0) == (side > 0.0)) out.push_back(e);
  }
  std::stable_sort(out.begin(), out.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  return out;
}

std::vector<Complex> zero_ground_levels(std::span<const Complex> reduced, const Superpotential& w,
                                        double imag_tol) {
  std::vector<Complex> out = branch_levels(reduced, w, imag_tol);
  if (out.empty()) return out;
  const Complex ground = out.front();
  for (Complex& e : out) e -= ground;
  return out;
}

double stencil_residual(const GridFunction& V, const GridFunction& psi, Complex E) {
  if (!(V.grid == psi.grid)) throw ParameterError("potential and psi live on different grids");
  const std::size_t np = V.grid.size();
  const double inv_h2 = 1.0 / (V.grid.spacing() * V.grid.spacing());
  std::vector<Complex> r(np - 2);
  const auto& f = psi.values;
  for (std::size_t i = 1; i + 1 < np; ++i) {
    // Dirichlet walls: the wall samples do not enter the interior operator
    const Complex left = i == 1 ? Complex(0.0) : f[i - 1];
    const Complex right = i + 2 == np ? Complex(0.0) : f[i + 1];
    r[i - 1] = (2.0 * f[i] - left - right) * inv_h2 + (V.values[i] - E) * f[i];
  }
  const double norm = norm2(psi.interior());
  if (norm == 0.0) throw NumericalError("residual of the zero vector is undefined");
  return norm2(r) / norm;
}

double ground_state_annihilation(const Superpotential& w, const Grid& grid) {
  const GridFunction psi0 = ground_state(w, grid);
  const GridFunction a_psi = apply_lowering(w, psi0);
  return a_psi.max_abs() / psi0.max_abs();
}

double intertwining_defect(const Superpotential& w, const Grid& grid) {
  const Tridiag hm = hamiltonian_tridiag(potential(w, Partner::Minus, grid));
  const Tridiag hp = hamiltonian_tridiag(potential(w, Partner::Plus, grid));
  const Tridiag a = lowering_tridiag(w, grid);
  const std::size_t n = hm.size();
  if (n < 8) throw ParameterError("intertwining check needs at least 10 grid points");

  double defect = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const std::size_t j0 = std::max<std::size_t>(2, i - 2);
    const std::size_t j1 = std::min(n - 3, i + 2);
    for (std::size_t j = j0; j <= j1; ++j) {
      defect += std::norm(product_entry(a, hm, i, j) - product_entry(hp, a, i, j));
    }
  }
  double hnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    hnorm += std::norm(hm.dia[i]);
    if (i > 0) hnorm += std::norm(hm.sub[i]);
    if (i + 1 < n) hnorm += std::norm(hm.sup[i]);
  }
  return std::sqrt(defect) / std::sqrt(hnorm);
}

SignArbitration arbitrate_cc_n2_sign(const ParamSet& broken, const Grid& grid) {
  const FamilyId plus{Family::Scarf2Broken, SignBranch::Plus};
  const Superpotential w = make_superpotential(plus, broken);
  const int per_branch = bound_level_count(make_descriptor(Family::Scarf2Broken), w);
  const auto reduced = numeric_reduced_levels(w, grid, std::size_t(2 * per_branch));
  const auto levels = zero_ground_levels(reduced, w);

  SignArbitration s;
  const Complex a = w.c1;
  const double al = broken.alpha;
  for (std::size_t n = 1; n < levels.size() && int(n) < per_branch; ++n) {
    const double nd = double(n);
    const Complex linear = 2.0 * nd * a * al;
    s.err_minus = std::max(s.err_minus, std::abs(levels[n] - (linear - nd * nd * al * al)));
    s.err_plus = std::max(s.err_plus, std::abs(levels[n] - (linear + nd * nd * al * al)));
    ++s.levels_used;
  }
  if (s.levels_used > 0) {
    s.decided = true;
    s.sign = s.err_minus <= s.err_plus ? '-' : '+';
  }
  return s;
}

std::string arbitration_line(const SignArbitration& a) {
  if (!a.decided) return "CC spectrum n^2 sign: undecided (no excited bound level)";
  return std::string("CC spectrum n^2 sign: ") + (a.sign == '-' ? "-" : "+") +
         "(n*alpha)^2 (numeric arbitration)";
}

GridFunction printed_eigenfunction(FamilyId id, const ParamSet& p, int n, const Grid& grid) {
  if (id.family != Family::Scarf2Real && id.family != Family::Scarf2Broken) {
    throw DomainError("printed eigenfunctions exist for Scarf2Real and Scarf2Broken only");
  }
  if (n < 0) throw ParameterError("level index must be non-negative");
  const Superpotential w = make_superpotential(id, p);
  require_in_domain(w, grid);
  const double al = p.alpha;
  const double sgn = id.branch == SignBranch::Plus ? 1.0 : -1.0;

  Complex sech_power, gd_coeff, jc, jd;
  if (id.family == Family::Scarf2Real) {
    sech_power = p.A / al;
    gd_coeff = Complex(0.0, -p.B / al);
    jc = -p.A / al - p.B / al - 0.5;
    jd = -p.A / al + p.B / al - 0.5;
  } else {
    sech_power = Complex(p.A, sgn * p.C_pt) / al;
    gd_coeff = -(p.A + 0.5 * al) / al - sgn * p.C_pt / al;
    jc = Complex(0.0, p.C_pt / al);
    jd = 2.0 * p.A / al + 0.5;
  }
  std::vector<Complex> log_pref(grid.size()), poly(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double y = al * grid.node(i);
    log_pref[i] = -sech_power * log_cosh(y) + gd_coeff * gudermannian(y);
    poly[i] = jacobi_poly_robust(n, jc, jd, Complex(0.0, std::sinh(y)));
  }
  return assemble(grid, log_pref, poly);
}

std::vector<Finding> printed_form_findings(FamilyId id, const ParamSet& p, const Grid& grid) {
  const Superpotential w = make_superpotential(id, p);
  const int n_max = std::min(3, bound_level_count(make_descriptor(id.family), w));
  const SpectrumResult closed = closed_form_spectrum(id, p, n_max);
  const GridFunction V = reduced_potential(w, Partner::Minus, grid);
  std::vector<Finding> out;
  for (int n = 0; n < n_max; ++n) {
    Finding f;
    f.form = std::string(to_string(id.family)) +
             (id.family == Family::Scarf2Broken ? std::string(" ") + std::string(to_string(id.branch)) : "") +
             " printed eigenfunction";
    f.n = n;
    f.residual = stencil_residual(V, printed_eigenfunction(id, p, n, grid),
                                  closed.energies[std::size_t(n)] + closed.offset);
    f.discrepancy = !(f.residual < kEigenResidualLimit);
    out.push_back(f);
  }
  return out;
}

bool SuiteReport::all_passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

SuiteReport run_invariant_suite(const SuiteOptions& opts) {
  SuiteReport report;
  Suite suite(report);
  std::mt19937_64 rng(opts.seed);
  auto uni = [&rng](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };

  const FamilyId real_id{Family::Scarf2Real, SignBranch::Plus};
  const FamilyId broken_plus{Family::Scarf2Broken, SignBranch::Plus};
  const FamilyId broken_minus{Family::Scarf2Broken, SignBranch::Minus};
  const Grid full = Grid::uniform(-14.0, 14.0, 701);
  const Grid fine = Grid::uniform(-14.0, 14.0, 1401);
  const Grid half = Grid::uniform(0.01, 40.0, 1000);
  const Grid sym = Grid::uniform(-10.0, 10.0, 201);

  auto random_params = [&](Family f) {
    switch (f) {
      case Family::Scarf2General: return ParamSet::scarf(uni(0.5, 4), uni(-2, 2), uni(-1.5, 1.5), uni(0.5, 2));
      case Family::Scarf2Real: return ParamSet::scarf_real(uni(0.5, 4), uni(-2, 2), uni(0.5, 2));
      case Family::Scarf2Broken: return ParamSet::scarf_broken(uni(0.5, 4), uni(-1.5, 1.5), uni(0.5, 2));
      case Family::PoschlTellerC1:
      case Family::PoschlTellerC2: return ParamSet::poschl_teller(uni(0.5, 3), uni(0.5, 3), uni(0.5, 2));
      case Family::CoulombComplex: return ParamSet::coulomb(uni(0.2, 3), uni(0.5, 3));
    }
    return ParamSet{};
  };
  const Family all_families[] = {Family::Scarf2General, Family::Scarf2Real, Family::Scarf2Broken,
                                 Family::PoschlTellerC1, Family::PoschlTellerC2,
                                 Family::CoulombComplex};
  auto grid_for = [&](Family f) { return is_half_line(f) ? half : sym; };

  // --- complex_special ---
  suite.run("jacobi_poly vs series", [&](bool& ok) {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const int n = int(uni(0, 8.999));
      const double a = uni(-0.9, 4), b = uni(-0.9, 4), z = uni(-1.5, 1.5);
      const Complex r = jacobi_poly(n, a, b, z);
      const Complex s = jacobi_poly_series(n, a, b, z);
      worst = std::max(worst, std::abs(r - s) / std::max(1.0, std::abs(s)));
    }
    ok = worst < 1e-12;
    return "max rel err " + fmt(worst);
  });
  suite.run("jacobi_poly reflection symmetry", [&](bool& ok) {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const int n = int(uni(0, 6.999));
      const Complex a(uni(-0.5, 3), uni(-2, 2)), b(uni(-0.5, 3), uni(-2, 2)), z(uni(-1.5, 1.5), uni(-1.5, 1.5));
      const Complex lhs = jacobi_poly(n, a, b, -z);
      const Complex rhs = (n % 2 ? -1.0 : 1.0) * jacobi_poly(n, b, a, z);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    ok = worst < 1e-12;
    return "max rel err " + fmt(worst);
  });
  suite.run("gudermannian odd", [&](bool& ok) {
    int bad = 0;
    for (int k = 0; k < 1000; ++k) {
      const double x = uni(-50, 50);
      if (gudermannian(-x) != -gudermannian(x)) ++bad;
    }
    ok = bad == 0;
    return std::to_string(bad) + " asymmetric samples";
  });

  // --- superpotential ---
  suite.run("partner potential construction", [&](bool& ok) {
    double worst_plus = 0.0, worst_fd = 0.0;
    for (Family f : all_families) {
      for (int k = 0; k < 50; ++k) {
        const ParamSet p = random_params(f);
        const Superpotential w = make_superpotential({f, SignBranch::Plus}, p);
        const Grid& g = grid_for(f);
        const GridFunction vp = potential(w, Partner::Plus, g);
        for (std::size_t i = 0; i < g.size(); i += 7) {
          const Complex wx = w.W(g.node(i));
          worst_plus = std::max(worst_plus, std::abs(vp.values[i] - (wx * wx + w.W_prime(g.node(i)))));
        }
        const double delta = 1e-4;
        for (int s = 0; s < 10; ++s) {
          const double x = is_half_line(f) ? uni(1.0, 10.0) : uni(-5.0, 5.0);
          const Complex fd = (w.W(x + delta) - w.W(x - delta)) / (2.0 * delta);
          worst_fd = std::max(worst_fd, std::abs(w.W_prime(x) - fd));
        }
      }
    }
    ok = worst_plus == 0.0 && worst_fd < 1e-6;
    return "V+ defect " + fmt(worst_plus) + ", W' vs central difference " + fmt(worst_fd);
  });
  suite.run("broken branch potential is sign independent", [&](bool& ok) {
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const ParamSet p = random_params(Family::Scarf2Broken);
      const GridFunction vp = reduced_potential(broken_plus, p, Partner::Minus, sym);
      const GridFunction vm = reduced_potential(broken_minus, p, Partner::Minus, sym);
      for (std::size_t i = 0; i < sym.size(); ++i) {
        worst = std::max(worst, std::abs(vp.values[i] - vm.values[i]) / std::max(1.0, std::abs(vp.values[i])));
      }
    }
    ok = worst < 1e-12;
    return "max diff " + fmt(worst);
  });
  suite.run("general family reduces to real at C_pt = 0", [&](bool& ok) {
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const ParamSet p = random_params(Family::Scarf2Real);
      const GridFunction vg = potential({Family::Scarf2General, SignBranch::Plus}, p, Partner::Minus, sym);
      const GridFunction vr = potential(real_id, p, Partner::Minus, sym);
      for (std::size_t i = 0; i < sym.size(); ++i) worst = std::max(worst, std::abs(vg.values[i] - vr.values[i]));
    }
    ok = worst <= 1e-14;
    return "max diff " + fmt(worst);
  });
  suite.run("ground state tail decay", [&](bool& ok) {
    int violations = 0;
    const Grid wide = Grid::uniform(-60.0, 60.0, 2401);
    for (Family f : all_families) {
      for (int k = 0; k < 20; ++k) {
        const ParamSet p = random_params(f);
        const Superpotential w = make_superpotential({f, SignBranch::Plus}, p);
        const Grid& g = is_half_line(f) ? half : wide;
        if (!(w.asymptote().real() > 0.0)) continue;
        if (!is_half_line(f) && !(w.c1.real() > 0.0)) continue;
        const GridFunction psi = ground_state(w, g);
        // nodes beyond the outermost sign changes of Re W
        std::size_t last_nonpos = 0, first_nonneg = g.size() - 1;
        bool any_nonpos = false;
        for (std::size_t i = 0; i < g.size(); ++i) {
          if (w.W(g.node(i)).real() <= 0.0) {
            last_nonpos = i;
            any_nonpos = true;
          }
        }
        for (std::size_t i = g.size(); i-- > 0;) {
          if (w.W(g.node(i)).real() >= 0.0) first_nonneg = i;
        }
        const std::size_t start = any_nonpos ? last_nonpos + 1 : 0;
        for (std::size_t i = start; i + 1 < g.size(); ++i) {
          if (std::abs(psi.values[i + 1]) > std::abs(psi.values[i]) * (1.0 + 1e-12)) ++violations;
        }
        if (!is_half_line(f)) {
          for (std::size_t i = 0; i + 1 < first_nonneg; ++i) {
            if (std::abs(psi.values[i]) > std::abs(psi.values[i + 1]) * (1.0 + 1e-12)) ++violations;
          }
        }
      }
    }
    ok = violations == 0;
    return std::to_string(violations) + " non-monotone tail steps";
  });

  // --- pt_analysis ---
  suite.run("pt_check on constraint branches", [&](bool& ok) {
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      for (FamilyId id : {real_id, broken_plus, broken_minus}) {
        const ParamSet p = random_params(id.family);
        const PTReport r = pt_check(reduced_potential(id, p, Partner::Minus, sym));
        if (!r.is_pt) ok = false;
        worst = std::max(worst, r.max_deviation);
      }
    }
    ok = ok && worst < 1e-10;
    return "max deviation " + fmt(worst);
  });
  suite.run("pt_check off constraint branches", [&](bool& ok) {
    double smallest = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 50; ++k) {
      ParamSet p;
      do {
        p = random_params(Family::Scarf2General);
      } while (std::abs(p.C_pt) < 0.1 || std::abs(2.0 * (p.A - p.B) + p.alpha) < 0.1);
      const PTReport r = pt_check(reduced_potential({Family::Scarf2General, SignBranch::Plus}, p,
                                                    Partner::Minus, sym));
      if (r.is_pt) ok = false;
      smallest = std::min(smallest, r.max_deviation);
    }
    return "min deviation " + fmt(smallest);
  });
  suite.run("bifurcation residual sign changes", [&](bool& ok) {
    int bad = 0;
    for (int k = 0; k < 100; ++k) {
      ParamSet p = random_params(Family::Scarf2General);
      const double c = uni(0.05, 1.5);
      if (std::abs(2.0 * (p.A - p.B) + p.alpha) < 0.05) continue;
      ParamSet lo = p, hi = p;
      lo.C_pt = -c;
      hi.C_pt = c;
      if (bifurcation_residual(lo) * bifurcation_residual(hi) >= 0.0) ++bad;
      const double d = uni(0.05, 1.0);
      lo = p;
      hi = p;
      lo.C_pt = hi.C_pt = c;
      lo.B = p.A + 0.5 * p.alpha - d;
      hi.B = p.A + 0.5 * p.alpha + d;
      if (bifurcation_residual(lo) * bifurcation_residual(hi) >= 0.0) ++bad;
    }
    ok = bad == 0;
    return std::to_string(bad) + " lines without a sign change";
  });
  suite.run("classify_branch lattice", [&](bool& ok) {
    int mismatches = 0;
    for (int ia = 0; ia < 10; ++ia) {
      for (int ib = 0; ib < 10; ++ib) {
        for (int ic = 0; ic < 10; ++ic) {
          const ParamSet p = ParamSet::scarf(0.5 + 0.5 * ia, 1.0 + 0.5 * ib, 0.25 * ic, 1.0);
          const bool on_surface = classify_branch(p) != BranchLabel::NonPT;
          const PTReport r = pt_check(reduced_potential({Family::Scarf2General, SignBranch::Plus}, p,
                                                        Partner::Minus, sym));
          if (on_surface != r.is_pt) ++mismatches;
        }
      }
    }
    ok = mismatches == 0;
    return std::to_string(mismatches) + " of 1000 lattice points disagree";
  });

  // --- shape_invariance ---
  auto descriptor = [&](Family f) {
    FamilyDescriptor d = make_descriptor(f);
    if (opts.fault == Fault::WrongParamStep && is_scarf(f)) {
      d.param_step = [](const Superpotential& w) {
        Superpotential next = w;
        next.c1 = w.c1 + w.alpha;
        return next;
      };
    }
    return d;
  };
  suite.run("shape_invariance_residual", [&](bool& ok) {
    double worst = 0.0;
    std::string worst_family;
    for (Family f : all_families) {
      const FamilyDescriptor d = descriptor(f);
      for (int k = 0; k < 100; ++k) {
        const Superpotential w = make_superpotential({f, k % 2 ? SignBranch::Minus : SignBranch::Plus}, random_params(f));
        const double r = shape_invariance_residual(d, w, grid_for(f));
        if (r > worst) {
          worst = r;
          worst_family = std::string(to_string(f));
        }
      }
    }
    ok = worst < 1e-10;
    return "max residual " + fmt(worst) + (worst_family.empty() ? "" : " (" + worst_family + ")");
  });
  suite.run("summation matches closed form", [&](bool& ok) {
    double worst = 0.0;
    for (Family f : {Family::Scarf2Real, Family::Scarf2Broken, Family::PoschlTellerC1,
                     Family::PoschlTellerC2, Family::CoulombComplex}) {
      const FamilyDescriptor d = descriptor(f);
      for (int k = 0; k < 100; ++k) {
        const FamilyId id{f, k % 2 ? SignBranch::Minus : SignBranch::Plus};
        const ParamSet p = random_params(f);
        const Superpotential w = make_superpotential(id, p);
        const int n = bound_level_count(d, w);
        const auto sum = spectrum_by_summation(d, w, n);
        const auto closed = closed_form_spectrum(id, p, n);
        for (int i = 0; i < n; ++i) {
          const Complex c = closed.energies[std::size_t(i)];
          worst = std::max(worst, std::abs(sum.energies[std::size_t(i)] - c) / std::max(1.0, std::abs(c)));
        }
      }
    }
    ok = worst < 1e-12;
    return "max rel diff " + fmt(worst);
  });
  suite.run("closed-form spectrum structure", [&](bool& ok) {
    int bad = 0;
    for (int k = 0; k < 100; ++k) {
      const ParamSet pb = random_params(Family::Scarf2Broken);
      const auto sp = closed_form_spectrum(broken_plus, pb, 6).energies;
      const auto sm = closed_form_spectrum(broken_minus, pb, 6).energies;
      for (std::size_t n = 0; n < sp.size(); ++n) {
        if (sp[n] != std::conj(sm[n])) ++bad;
        if (sp[n].imag() != double(n) * sp[1].imag()) ++bad;
      }
      for (Family f : {Family::PoschlTellerC1, Family::PoschlTellerC2}) {
        const auto e = closed_form_spectrum({f, SignBranch::Plus}, random_params(f), 6).energies;
        for (std::size_t n = 0; n < e.size(); ++n) {
          if (e[n].imag() != double(n) * e[1].imag()) ++bad;
        }
      }
      for (const Complex& e : closed_form_spectrum(real_id, random_params(Family::Scarf2Real), 6).energies) {
        if (e.imag() != 0.0) ++bad;
      }
    }
    ok = bad == 0;
    return std::to_string(bad) + " violations of pairing, equispacing or reality";
  });
  suite.run("isospectral shift (descriptors)", [&](bool& ok) {
    double worst = 0.0;
    for (Family f : {Family::Scarf2Real, Family::Scarf2Broken, Family::PoschlTellerC1, Family::CoulombComplex}) {
      const FamilyDescriptor d = descriptor(f);
      for (int k = 0; k < 20; ++k) {
        const Superpotential w = make_superpotential({f, SignBranch::Plus}, random_params(f));
        const int n = bound_level_count(d, w);
        if (n < 2) continue;
        const auto minus = spectrum_by_summation(d, w, n).energies;
        // V_+(a0) = V_-(a1) + R, so its levels are R + spectrum of a1
        const Superpotential w1 = param_step(d, w);
        const Complex R = remainder(d, w);
        const auto plus = spectrum_by_summation(d, w1, n - 1).energies;
        for (int i = 0; i + 1 < n; ++i) {
          worst = std::max(worst, std::abs(plus[std::size_t(i)] + R - minus[std::size_t(i) + 1]));
        }
      }
    }
    ok = worst < 1e-10;
    return "max diff " + fmt(worst);
  });
  suite.run("Coulomb first level", [&](bool& ok) {
    const ParamSet p = ParamSet::coulomb(1.0, 1.0);
    const FamilyId id{Family::CoulombComplex, SignBranch::Plus};
    const Complex sum = spectrum_by_summation(descriptor(Family::CoulombComplex), make_superpotential(id, p), 2).energies[1];
    const Complex closed = closed_form_spectrum(id, p, 2).energies[1];
    const double err = std::max(std::abs(sum - Complex(1.0, 0.5)), std::abs(closed - Complex(1.0, 0.5)));
    ok = err < 1e-12;
    return "E1 = " + fmt(sum.real()) + (sum.imag() < 0 ? " - " : " + ") + fmt(std::abs(sum.imag())) + "i, err " + fmt(err);
  });

  // --- spectral_solver ---
  suite.run("eigensolver backward error", [&](bool& ok) {
    double worst = 0.0;
    std::normal_distribution<double> nd;
    for (int k = 0; k < 50; ++k) {
      const std::size_t n = 2 + std::size_t(uni(0, 48.999));
      DenseComplexMatrix M(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M(i, j) = Complex(nd(rng), nd(rng));
      for (const Complex& l : eigenvalues(M)) worst = std::max(worst, min_pivot_ratio(M, l));
    }
    ok = worst < 1e-8;
    return "max min-pivot ratio " + fmt(worst);
  });
  suite.run("infinite well second-order convergence", [&](bool& ok) {
    std::vector<double> errs;
    for (std::size_t np : {51, 101, 201}) {
      const Grid g = Grid::uniform(0.0, std::acos(-1.0), np);
      const GridFunction V(g, std::vector<Complex>(np));
      auto ev = eigenvalues(discretize_hamiltonian(V));
      const auto lowest = *std::min_element(ev.begin(), ev.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
      errs.push_back(std::abs(lowest - 1.0));
    }
    const double r1 = errs[0] / errs[1], r2 = errs[1] / errs[2];
    ok = std::abs(r1 - 4.0) < 0.5 && std::abs(r2 - 4.0) < 0.5;
    return "error ratios " + fmt(r1) + ", " + fmt(r2);
  });

  const ParamSet real_p = ParamSet::scarf_real(2.5, 0.5, 1.0);
  const Superpotential real_w = make_superpotential(real_id, real_p);
  suite.run("real branch numeric spectrum", [&](bool& ok) {
    const GridFunction V = reduced_potential(real_w, Partner::Minus, full);
    const auto raw = eigenvalues(discretize_hamiltonian(V));
    double radius = 0.0;
    for (const Complex& e : raw) radius = std::max(radius, std::abs(e));
    const auto bound = filter_bound_states(raw, V, 3);
    const SpectrumResult closed = closed_form_spectrum(real_id, real_p, 3);
    std::vector<Complex> shifted;
    double worst_im = 0.0;
    for (const Complex& e : bound) {
      shifted.push_back(e - closed.offset);
      worst_im = std::max(worst_im, std::abs(e.imag()));
    }
    const EigenReport rep = match_spectra(shifted, closed, 1e-2);
    double worst = 0.0;
    for (const auto& m : rep.matched) worst = std::max(worst, m.abs_error);
    ok = rep.all_matched() && worst_im < 1e-6 * radius;
    return "max |dE| " + fmt(worst) + ", max |Im E| " + fmt(worst_im) + " (radius " + fmt(radius) + ")";
  });
  suite.run("isospectral partners (numeric)", [&](bool& ok) {
    const auto minus = solve_bound_states(potential(real_w, Partner::Minus, full), 3);
    const auto plus = solve_bound_states(potential(real_w, Partner::Plus, full), 2);
    double worst = 0.0;
    for (std::size_t i = 0; i < plus.size(); ++i) worst = std::max(worst, std::abs(plus[i] - minus[i + 1]));
    ok = worst < 1e-2;
    return "max |E+_n - E-_(n+1)| " + fmt(worst);
  });
  suite.run("ground state annihilation", [&](bool& ok) {
    double worst = 0.0;
    for (FamilyId id : {real_id, broken_plus, broken_minus}) {
      const ParamSet p = id.family == Family::Scarf2Real ? real_p : ParamSet::scarf_broken(2.5, 0.75, 1.0);
      worst = std::max(worst, ground_state_annihilation(make_superpotential(id, p), fine));
    }
    ok = worst < 1e-4;
    return "max |A psi0| / max |psi0| " + fmt(worst);
  });
  suite.run("intertwining relation", [&](bool& ok) {
    const double d = intertwining_defect(real_w, full);
    const double db = intertwining_defect(make_superpotential(broken_plus, ParamSet::scarf_broken(2.5, 0.75, 1.0)), full);
    const double bound = 5.0 * full.spacing();
    ok = d < bound && db < bound;
    return "defect " + fmt(d) + " / " + fmt(db) + " (bound " + fmt(bound) + ")";
  });
  suite.run("ladder state vs analytic eigenfunction", [&](bool& ok) {
    const GridFunction lad = ladder_state(make_descriptor(Family::Scarf2Real), real_w, 1, fine);
    const GridFunction ana = analytic_eigenfunction(real_id, real_p, 1, fine);
    const double ov = overlap(lad.values, ana.values);
    ok = ov > 1.0 - 1e-4;
    return "overlap " + std::to_string(ov);
  });
  suite.run("analytic eigenfunction residuals", [&](bool& ok) {
    // the n = 2 level decays like exp(-0.25 |x|), so the box must be wide
    const Grid g = Grid::uniform(-60.0, 60.0, 6001);
    double worst = 0.0;
    const ParamSet pr = ParamSet::scarf_real(1.25, 0.25, 0.5);
    const ParamSet pb = ParamSet::scarf_broken(1.25, 0.375, 0.5);
    for (FamilyId id : {real_id, broken_plus, broken_minus}) {
      const ParamSet& p = id.family == Family::Scarf2Real ? pr : pb;
      const SpectrumResult closed = closed_form_spectrum(id, p, 3);
      const GridFunction V = reduced_potential(id, p, Partner::Minus, g);
      for (int n = 0; n < 3; ++n) {
        const double r = stencil_residual(V, analytic_eigenfunction(id, p, n, g),
                                          closed.energies[std::size_t(n)] + closed.offset);
        worst = std::max(worst, r);
      }
    }
    ok = worst < kEigenResidualLimit;
    return "max residual " + fmt(worst) + " at h = " + fmt(g.spacing());
  });
  suite.run("PT partner eigenfunctions", [&](bool& ok) {
    const ParamSet pb = ParamSet::scarf_broken(2.5, 0.75, 1.0);
    double worst = 0.0;
    for (int n = 0; n < 3; ++n) {
      const GridFunction pp = analytic_eigenfunction(broken_plus, pb, n, sym);
      const GridFunction pm = analytic_eigenfunction(broken_minus, pb, n, sym);
      std::vector<Complex> mirrored(sym.size());
      for (std::size_t i = 0; i < sym.size(); ++i) mirrored[i] = std::conj(pm.values[sym.mirror(i)]);
      worst = std::max(worst, 1.0 - overlap(pp.values, mirrored));
    }
    ok = worst < 1e-10;
    return "max 1 - overlap " + fmt(worst);
  });

  const ParamSet cc_p = ParamSet::scarf_broken(3.0, 0.75, 1.0);
  suite.run("broken branch numeric spectrum", [&](bool& ok) {
    const Superpotential w = make_superpotential(broken_plus, cc_p);
    const auto reduced = numeric_reduced_levels(w, full, 6);
    const PairingResult pairs = cc_pair_check(reduced, 1e-2);
    const auto levels = zero_ground_levels(reduced, w);
    double spacing_err = 0.0;
    for (std::size_t n = 2; n < levels.size(); ++n) {
      spacing_err = std::max(spacing_err, std::abs(levels[n].imag() / (double(n) * levels[1].imag()) - 1.0));
    }
    const double im1_err = std::abs(levels[1].imag() / (2.0 * cc_p.C_pt * cc_p.alpha) - 1.0);
    ok = pairs.closed && spacing_err < 0.05 && im1_err < 0.05;
    return std::string(pairs.closed ? "conjugate pairs" : "unpaired levels") + ", Im E1 rel err " +
           fmt(im1_err) + ", equispacing rel err " + fmt(spacing_err);
  });

  suite.run("n^2 sign arbitration", [&](bool& ok) {
    report.arbitration = arbitrate_cc_n2_sign(cc_p, full);
    ok = report.arbitration.decided;
    return "err(-) " + fmt(report.arbitration.err_minus) + ", err(+) " + fmt(report.arbitration.err_plus);
  });

  const Grid g_find = Grid::uniform(-60.0, 60.0, 6001);
  for (FamilyId id : {real_id, broken_plus, broken_minus}) {
    const ParamSet p = id.family == Family::Scarf2Real ? ParamSet::scarf_real(1.25, 0.25, 0.5)
                                                       : ParamSet::scarf_broken(1.25, 0.375, 0.5);
    for (Finding& f : printed_form_findings(id, p, g_find)) report.findings.push_back(std::move(f));
  }
  return report;
}

}  // namespace susypt
