#include "susypt/spectral_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "susypt/errors.hpp"

namespace susypt {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSafeMin = std::numeric_limits<double>::min();

double cabs1(Complex z) noexcept { return std::abs(z.real()) + std::abs(z.imag()); }

// Row-major working copy with bounds implied by order.
struct Work {
  std::size_t n;
  std::vector<Complex> a;
  Complex& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
};

// Householder reduction to upper Hessenberg form.
void reduce_to_hessenberg(Work& H) {
  const std::size_t n = H.n;
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const Complex alpha = H(k + 1, k);
    double xnorm = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) xnorm = std::hypot(xnorm, std::abs(H(i, k)));
    if (xnorm == 0.0) continue;

    const double beta = -std::copysign(std::hypot(std::abs(alpha), xnorm), alpha.real());
    const Complex tau((beta - alpha.real()) / beta, -alpha.imag() / beta);
    const Complex scale = 1.0 / (alpha - beta);
    v[k + 1] = 1.0;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = H(i, k) * scale;

    // left: (I - conj(tau) v v^H) H
    for (std::size_t j = k; j < n; ++j) {
      Complex dot = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * H(i, j);
      dot *= std::conj(tau);
      for (std::size_t i = k + 1; i < n; ++i) H(i, j) -= v[i] * dot;
    }
    // right: H (I - tau v v^H)
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += H(i, j) * v[j];
      dot *= tau;
      for (std::size_t j = k + 1; j < n; ++j) H(i, j) -= dot * std::conj(v[j]);
    }
    H(k + 1, k) = beta;
    for (std::size_t i = k + 2; i < n; ++i) H(i, k) = 0.0;
  }
}

// Rotation G = [c s; -conj(s) c] with G [x; y] = [r; 0].
struct Givens {
  double c = 1.0;
  Complex s;
};

Givens make_givens(Complex x, Complex y) {
  Givens g;
  if (y == 0.0) return g;
  if (x == 0.0) {
    g.c = 0.0;
    g.s = std::conj(y) / std::abs(y);
    return g;
  }
  const double ax = std::abs(x);
  const double norm = std::hypot(ax, std::abs(y));
  g.c = ax / norm;
  g.s = (x / ax) * std::conj(y) / norm;
  return g;
}

// Plain complex product; std::complex operator* goes through the Annex G
// NaN recovery libcall, which dominates the sweep cost.
inline Complex mul(Complex x, Complex y) {
  return {x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real()};
}

void rotate_rows(Work& H, const Givens& g, std::size_t k, std::size_t j0, std::size_t j1) {
  const Complex sc = -std::conj(g.s);
  Complex* r0 = &H(k, 0);
  Complex* r1 = &H(k + 1, 0);
  for (std::size_t j = j0; j <= j1; ++j) {
    const Complex a = r0[j];
    const Complex b = r1[j];
    r0[j] = g.c * a + mul(g.s, b);
    r1[j] = mul(sc, a) + g.c * b;
  }
}

void rotate_cols(Work& H, const Givens& g, std::size_t k, std::size_t i0, std::size_t i1) {
  const Complex sc = std::conj(g.s);
  const Complex ms = -g.s;
  for (std::size_t i = i0; i <= i1; ++i) {
    Complex* row = &H(i, k);
    const Complex a = row[0];
    const Complex b = row[1];
    row[0] = g.c * a + mul(sc, b);
    row[1] = mul(ms, a) + g.c * b;
  }
}

// Eigenvalues of a 2x2 block, numerically stable form.
std::pair<Complex, Complex> eig2(Complex a, Complex b, Complex c, Complex d) {
  const Complex half_tr = 0.5 * (a + d);
  const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  const Complex l1 = half_tr + disc;
  const Complex l2 = half_tr - disc;
  // recover the smaller root from the determinant to avoid cancellation
  const Complex det = a * d - b * c;
  if (std::abs(l1) >= std::abs(l2)) {
    return {l1, std::abs(l1) > 0.0 ? det / l1 : l2};
  }
  return {std::abs(l2) > 0.0 ? det / l2 : l1, l2};
}

// Wilkinson shift: eigenvalue of the trailing 2x2 closer to its last entry.
Complex wilkinson_shift(Work& H, std::size_t hi) {
  const Complex t = H(hi, hi);
  const Complex u = std::sqrt(H(hi - 1, hi)) * std::sqrt(H(hi, hi - 1));
  double s = cabs1(u);
  if (s == 0.0) return t;
  const Complex x = 0.5 * (H(hi - 1, hi - 1) - t);
  const double sx = cabs1(x);
  s = std::max(s, sx);
  Complex y = s * std::sqrt((x / s) * (x / s) + (u / s) * (u / s));
  if (sx > 0.0) {
    const Complex xn = x / sx;
    if (xn.real() * y.real() + xn.imag() * y.imag() < 0.0) y = -y;
  }
  const Complex denom = x + y;
  if (denom == 0.0) return t;
  return t - u * (u / denom);
}

// True when H(k, k-1) is negligible (Ahues and Tisseur criterion).
bool negligible_subdiagonal(Work& H, std::size_t k, double ulp) {
  const Complex sub = H(k, k - 1);
  if (cabs1(sub) <= kSafeMin) return true;
  double tst = cabs1(H(k - 1, k - 1)) + cabs1(H(k, k));
  if (tst == 0.0) {
    if (k >= 2) tst += std::abs(H(k - 1, k - 2).real());
    if (k + 1 < H.n) tst += std::abs(H(k + 1, k).real());
  }
  if (cabs1(sub) > ulp * tst) return false;
  const double ab = std::max(cabs1(sub), cabs1(H(k - 1, k)));
  const double ba = std::min(cabs1(sub), cabs1(H(k - 1, k)));
  const Complex diff = H(k - 1, k - 1) - H(k, k);
  const double aa = std::max(cabs1(H(k, k)), cabs1(diff));
  const double bb = std::min(cabs1(H(k, k)), cabs1(diff));
  const double s = aa + ab;
  return ba * (ab / s) <= std::max(kSafeMin, ulp * (bb * (aa / s)));
}

}  // namespace

DenseComplexMatrix::DenseComplexMatrix(std::size_t order) : n_(order), a_(order * order) {
  if (order < 2) throw ParameterError("matrix order must be at least 2");
}

DenseComplexMatrix::DenseComplexMatrix(std::size_t order, std::vector<Complex> entries)
    : n_(order), a_(std::move(entries)) {
  if (order < 2) throw ParameterError("matrix order must be at least 2");
  if (a_.size() != order * order) {
    throw ParameterError("matrix needs order^2 = " + std::to_string(order * order) +
                         " entries, got " + std::to_string(a_.size()));
  }
}

std::vector<Complex> DenseComplexMatrix::apply(std::span<const Complex> x) const {
  if (x.size() != n_) throw ParameterError("vector length does not match matrix order");
  std::vector<Complex> y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    Complex acc = 0.0;
    const Complex* row = &a_[i * n_];
    for (std::size_t j = 0; j < n_; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

double DenseComplexMatrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (const Complex& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

DenseComplexMatrix discretize_hamiltonian(const GridFunction& V) {
  const std::size_t np = V.grid.size();
  if (np < kMinHamiltonianPoints) {
    throw ParameterError("Hamiltonian needs at least " + std::to_string(kMinHamiltonianPoints) +
                         " grid points, got " + std::to_string(np));
  }
  const double h = V.grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  const std::size_t n = np - 2;
  DenseComplexMatrix M(n);
  for (std::size_t i = 0; i < n; ++i) {
    M(i, i) = 2.0 * inv_h2 + V.values[i + 1];
    if (i > 0) M(i, i - 1) = -inv_h2;
    if (i + 1 < n) M(i, i + 1) = -inv_h2;
  }
  return M;
}

std::vector<Complex> eigenvalues(const DenseComplexMatrix& M, double tol, int max_iters,
                                 std::size_t order_cap) {
  const std::size_t n = M.order();
  if (n > order_cap) {
    throw ParameterError("matrix order " + std::to_string(n) + " exceeds cap " +
                         std::to_string(order_cap));
  }
  if (max_iters < 1) throw ParameterError("max_iters must be positive");
  for (const Complex& z : M.entries()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NumericalError("matrix has non-finite entries");
    }
  }
  const double ulp = tol > 0.0 ? tol : kEps;

  Work H{n, std::vector<Complex>(M.entries().begin(), M.entries().end())};
  reduce_to_hessenberg(H);

  std::vector<Complex> eig(n);
  std::size_t hi = n - 1;
  int its = 0;
  while (true) {
    // find the active window [lo, hi]
    std::size_t lo = 0;
    for (std::size_t k = hi; k > 0; --k) {
      if (negligible_subdiagonal(H, k, ulp)) {
        H(k, k - 1) = 0.0;
        lo = k;
        break;
      }
    }

    if (lo == hi) {
      eig[hi] = H(hi, hi);
      its = 0;
      if (hi == 0) break;
      --hi;
      continue;
    }
    if (lo + 1 == hi) {
      const auto [l1, l2] = eig2(H(lo, lo), H(lo, hi), H(hi, lo), H(hi, hi));
      eig[lo] = l1;
      eig[hi] = l2;
      its = 0;
      if (lo == 0) break;
      hi = lo - 1;
      continue;
    }

    if (++its > max_iters) {
      throw NumericalError("QR iteration stuck in deflation window [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "] after " + std::to_string(max_iters) +
                           " iterations");
    }

    Complex shift;
    if (its == 10) {
      shift = H(lo, lo) + 0.75 * std::abs(H(lo + 1, lo).real());
    } else if (its == 20) {
      shift = H(hi, hi) + 0.75 * std::abs(H(hi, hi - 1).real());
    } else {
      shift = wilkinson_shift(H, hi);
    }

    // implicit single-shift sweep over the window
    Givens g = make_givens(H(lo, lo) - shift, H(lo + 1, lo));
    rotate_rows(H, g, lo, lo, hi);
    rotate_cols(H, g, lo, lo, std::min(lo + 2, hi));
    for (std::size_t k = lo + 1; k < hi; ++k) {
      g = make_givens(H(k, k - 1), H(k + 1, k - 1));
      rotate_rows(H, g, k, k - 1, hi);
      H(k + 1, k - 1) = 0.0;
      rotate_cols(H, g, k, lo, std::min(k + 2, hi));
    }
  }
  return eig;
}

std::vector<Complex> inverse_iteration(const GridFunction& V, Complex E, int sweeps) {
  const std::size_t np = V.grid.size();
  if (np < 5) throw ParameterError("inverse iteration needs at least 5 grid points");
  const std::size_t n = np - 2;
  const double h = V.grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  // nudge the shift so T - sigma stays (barely) nonsingular
  const Complex sigma = E + Complex(1e-10 * std::max(1.0, std::abs(E)), 0.0);
  const Complex off = -inv_h2;
  const double tiny = kEps * (2.0 * inv_h2 + std::abs(E));

  // LU with partial pivoting of the tridiagonal T - sigma I: U has two
  // superdiagonals (u1, u2), L stores one multiplier per row with the pivot flag.
  std::vector<Complex> d(n), u1(n), u2(n), mult(n);
  std::vector<char> swapped(n, 0);
  for (std::size_t i = 0; i < n; ++i) d[i] = 2.0 * inv_h2 + V.values[i + 1] - sigma;
  for (std::size_t i = 0; i + 1 < n; ++i) u1[i] = off;

  // row i holds (d[i], u1[i], u2[i]) in columns (i, i+1, i+2)
  Complex sub = off;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Complex nd = i + 1 < n ? d[i + 1] : Complex(0.0);
    Complex nu1 = i + 2 < n ? off : Complex(0.0);
    if (std::abs(sub) > std::abs(d[i])) {
      // swap rows i and i+1
      swapped[i] = 1;
      const Complex r0 = sub, r1 = nd, r2 = nu1;
      const Complex m = d[i] / r0;
      const Complex old_u1 = u1[i];
      d[i] = r0;
      u1[i] = r1;
      u2[i] = r2;
      mult[i] = m;
      d[i + 1] = old_u1 - m * r1;
      if (i + 2 < n) u1[i + 1] = -m * r2;
    } else {
      if (std::abs(d[i]) < tiny) d[i] = tiny;
      const Complex m = sub / d[i];
      mult[i] = m;
      u2[i] = 0.0;
      d[i + 1] = nd - m * u1[i];
      if (i + 2 < n) u1[i + 1] = nu1;
    }
    sub = off;
  }
  if (std::abs(d[n - 1]) < tiny) d[n - 1] = tiny;

  std::vector<Complex> x(n, Complex(1.0, 0.0));
  for (int s = 0; s < std::max(1, sweeps); ++s) {
    // forward: apply L^{-1} P
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped[i]) std::swap(x[i], x[i + 1]);
      x[i + 1] -= mult[i] * x[i];
    }
    // back substitution
    for (std::size_t ii = n; ii-- > 0;) {
      Complex acc = x[ii];
      if (ii + 1 < n) acc -= u1[ii] * x[ii + 1];
      if (ii + 2 < n) acc -= u2[ii] * x[ii + 2];
      x[ii] = acc / d[ii];
    }
    const double peak = max_abs(x);
    if (!(peak > 0.0) || !std::isfinite(peak)) throw NumericalError("inverse iteration diverged");
    for (Complex& z : x) z /= peak;
  }
  return x;
}

double boundary_amplitude(std::span<const Complex> psi) noexcept {
  const double peak = max_abs(psi);
  if (psi.empty() || peak == 0.0) return 0.0;
  return std::max(std::abs(psi.front()), std::abs(psi.back())) / peak;
}

std::vector<Complex> bound_state_candidates(std::span<const Complex> raw, const GridFunction& V) {
  const Complex v_left = V.values.front();
  const Complex v_right = V.values.back();
  double spread = 0.0;
  for (const Complex& v : V.values) spread = std::max(spread, std::abs(v - v_left));

  std::vector<Complex> keep;
  if (spread <= kEps * std::max(1.0, std::abs(v_left))) {
    keep.assign(raw.begin(), raw.end());
  } else {
    double scale = 0.0;
    for (const Complex& e : raw) scale = std::max(scale, std::abs(e));
    const double ray_tol = 1e-8 * std::max(1.0, scale);
    auto on_ray = [ray_tol](Complex e, Complex v) {
      const Complex d = e - v;
      return d.real() >= 0.0 && std::abs(d.imag()) <= ray_tol;
    };
    for (const Complex& e : raw) {
      if (on_ray(e, v_left) || on_ray(e, v_right)) continue;
      const auto psi = inverse_iteration(V, e);
      if (boundary_amplitude(psi) < kBoundaryAmplitudeLimit) keep.push_back(e);
    }
  }
  std::stable_sort(keep.begin(), keep.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return keep;
}

std::vector<Complex> filter_bound_states(std::span<const Complex> raw, const GridFunction& V,
                                         std::size_t count) {
  std::vector<Complex> keep = bound_state_candidates(raw, V);
  if (keep.size() < count) {
    throw DomainError("grid/domain too small: " + std::to_string(keep.size()) +
                      " bound states survive, " + std::to_string(count) + " requested");
  }
  keep.resize(count);
  return keep;
}

EigenReport match_spectra(std::span<const Complex> numeric, const SpectrumResult& analytic,
                          double tol) {
  EigenReport r;
  r.eigenvalues.assign(numeric.begin(), numeric.end());
  std::vector<char> used(numeric.size(), 0);
  for (std::size_t n = 0; n < analytic.energies.size(); ++n) {
    const Complex target = analytic.energies[n];
    std::size_t best = numeric.size();
    double best_err = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < numeric.size(); ++j) {
      if (used[j]) continue;
      const double err = std::abs(numeric[j] - target);
      if (err < best_err) {
        best_err = err;
        best = j;
      }
    }
    if (best == numeric.size() || !(best_err <= tol)) {
      r.unmatched_analytic.push_back(int(n));
      continue;
    }
    used[best] = 1;
    r.matched.push_back({int(n), target, numeric[best], best_err});
  }
  return r;
}

PairingResult cc_pair_check(std::span<const Complex> values, double tol) {
  PairingResult r;
  std::vector<char> used(values.size(), 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (used[i]) continue;
    used[i] = 1;
    if (std::abs(values[i].imag()) <= tol) {
      r.pairs.emplace_back(i, i);
      continue;
    }
    const Complex target = std::conj(values[i]);
    std::size_t best = values.size();
    double best_err = std::numeric_limits<double>::infinity();
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (used[j]) continue;
      const double err = std::abs(values[j] - target);
      if (err < best_err) {
        best_err = err;
        best = j;
      }
    }
    if (best == values.size() || best_err > tol) return r;
    used[best] = 1;
    r.pairs.emplace_back(i, best);
  }
  r.closed = true;
  return r;
}

double eigen_residual(const DenseComplexMatrix& M, std::span<const Complex> psi, Complex E) {
  const std::size_t n = M.order();
  std::span<const Complex> inner;
  if (psi.size() == n) {
    inner = psi;
  } else if (psi.size() == n + 2) {
    inner = psi.subspan(1, n);
  } else {
    throw ParameterError("psi has " + std::to_string(psi.size()) +
                         " samples; matrix expects " + std::to_string(n) + " interior nodes");
  }
  const double norm = norm2(inner);
  if (norm == 0.0) throw NumericalError("residual of the zero vector is undefined");
  std::vector<Complex> r = M.apply(inner);
  for (std::size_t i = 0; i < n; ++i) r[i] -= E * inner[i];
  return norm2(r) / norm;
}

double eigen_residual(const DenseComplexMatrix& M, const GridFunction& psi, Complex E) {
  return eigen_residual(M, std::span<const Complex>(psi.values), E);
}

}  // namespace susypt
