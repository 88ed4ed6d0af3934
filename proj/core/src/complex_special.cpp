#include "susypt/complex_special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "susypt/errors.hpp"

namespace susypt {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Generalized binomial coefficient C(w, m) for complex w and integer m >= 0.
Complex binomial(Complex w, int m) {
  Complex c = 1.0;
  for (int j = 0; j < m; ++j) c *= (w - double(j)) / double(j + 1);
  return c;
}

}  // namespace

Grid::Grid(double x_min, double x_max, std::size_t n_points)
    : x_min_(x_min),
      x_max_(x_max),
      n_points_(n_points),
      h_((x_max - x_min) / double(n_points - 1)) {}

Grid Grid::uniform(double x_min, double x_max, std::size_t n_points) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw ParameterError("grid bounds must be finite");
  }
  if (n_points < 3) throw ParameterError("grid needs at least 3 points");
  if (!(x_min < x_max)) throw ParameterError("grid requires x_min < x_max");
  return Grid(x_min, x_max, n_points);
}

double Grid::node(std::size_t i) const noexcept {
  if (i == 0) return x_min_;
  if (i + 1 == n_points_) return x_max_;
  const double mid = 0.5 * (x_min_ + x_max_);
  const double half = 0.5 * double(n_points_ - 1);
  return mid + (double(i) - half) * h_;
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(n_points_);
  for (std::size_t i = 0; i < n_points_; ++i) x[i] = node(i);
  return x;
}

bool Grid::is_symmetric() const noexcept {
  return x_min_ == -x_max_ && (n_points_ % 2 == 1);
}

GridFunction::GridFunction(Grid g, std::vector<Complex> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) {
    throw ParameterError("grid function has " + std::to_string(values.size()) +
                         " values for a grid of " + std::to_string(grid.size()) + " nodes");
  }
}

double GridFunction::max_abs() const noexcept { return susypt::max_abs(values); }

void GridFunction::normalize_peak() {
  const double peak = max_abs();
  if (peak == 0.0) return;
  for (auto& v : values) v /= peak;
}

std::span<const Complex> GridFunction::interior() const noexcept {
  return std::span<const Complex>(values).subspan(1, values.size() - 2);
}

Complex jacobi_poly(int n, Complex a, Complex b, Complex z) {
  if (n < 0) throw ParameterError("Jacobi degree must be non-negative");
  if (!finite(a) || !finite(b) || !finite(z)) {
    throw ParameterError("Jacobi arguments must be finite");
  }
  if (n == 0) return 1.0;

  Complex prev = 1.0;
  Complex cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * z;
  for (int m = 2; m <= n; ++m) {
    const double md = m;
    const Complex s = 2.0 * md + a + b;
    const Complex denom = 2.0 * md * (md + a + b) * (s - 2.0);
    if (std::abs(denom) < 1e-12) throw NumericalError("degenerate Jacobi recurrence");
    const Complex c1 = (s - 1.0) * (s * (s - 2.0) * z + a * a - b * b);
    const Complex c2 = 2.0 * (md + a - 1.0) * (md + b - 1.0) * s;
    const Complex next = (c1 * cur - c2 * prev) / denom;
    prev = cur;
    cur = next;
  }
  return cur;
}

Complex jacobi_poly_series(int n, Complex a, Complex b, Complex z) {
  if (n < 0) throw ParameterError("Jacobi degree must be non-negative");
  // P_n = sum_k C(n+a, n-k) C(n+b, k) ((z-1)/2)^k ((z+1)/2)^(n-k)
  const Complex zm = 0.5 * (z - 1.0);
  const Complex zp = 0.5 * (z + 1.0);
  Complex sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    sum += binomial(double(n) + a, n - k) * binomial(double(n) + b, k) * std::pow(zm, k) *
           std::pow(zp, n - k);
  }
  return sum;
}

Complex jacobi_poly_robust(int n, Complex a, Complex b, Complex z) {
  try {
    return jacobi_poly(n, a, b, z);
  } catch (const NumericalError&) {
    return jacobi_poly_series(n, a, b, z);
  }
}

double gudermannian(double x) {
  const double g = 2.0 * std::atan(std::tanh(0.5 * std::fabs(x)));
  return std::copysign(g, x);
}

double log_cosh(double x) {
  const double ax = std::fabs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

double log_sinh(double x) {
  if (!(x > 0.0)) throw DomainError("log_sinh requires x > 0");
  return x + std::log(-std::expm1(-2.0 * x)) - std::numbers::ln2;
}

double max_abs(std::span<const Complex> v) noexcept {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

double norm2(std::span<const Complex> v) noexcept {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

double overlap(std::span<const Complex> u, std::span<const Complex> v) noexcept {
  const std::size_t n = std::min(u.size(), v.size());
  Complex dot = 0.0;
  for (std::size_t i = 0; i < n; ++i) dot += std::conj(u[i]) * v[i];
  const double nu = norm2(u.first(n));
  const double nv = norm2(v.first(n));
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return std::abs(dot) / (nu * nv);
}

}  // namespace susypt
