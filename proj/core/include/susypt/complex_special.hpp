#pragma once

// Complex scalar conventions, uniform grids, and the special functions used by
// the closed-form eigenfunctions. Units are natural: hbar = 2m = 1, so the
// Hamiltonian is H = -d^2/dx^2 + V(x).

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace susypt {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Uniform 1-D grid. Nodes are placed symmetrically about the midpoint so a
/// grid with x_min == -x_max and an odd node count maps x -> -x node to node
/// exactly (and has x = 0 as a node).
class Grid {
 public:
  /// Throws ParameterError unless n_points >= 3 and x_min < x_max (both finite).
  static Grid uniform(double x_min, double x_max, std::size_t n_points);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  std::size_t size() const noexcept { return n_points_; }
  double spacing() const noexcept { return h_; }

  double node(std::size_t i) const noexcept;
  std::vector<double> nodes() const;

  /// x_min == -x_max and n_points odd.
  bool is_symmetric() const noexcept;
  std::size_t mirror(std::size_t i) const noexcept { return n_points_ - 1 - i; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  Grid(double x_min, double x_max, std::size_t n_points);

  double x_min_;
  double x_max_;
  std::size_t n_points_;
  double h_;
};

/// Complex samples of W, V, or psi on a grid; values.size() == grid.size().
struct GridFunction {
  Grid grid;
  std::vector<Complex> values;

  GridFunction(Grid g, std::vector<Complex> v);

  std::size_t size() const noexcept { return values.size(); }
  double max_abs() const noexcept;
  /// Rescales so that max |value| == 1. No-op on the zero function.
  void normalize_peak();
  /// Values at the interior nodes (drops the two Dirichlet end points).
  std::span<const Complex> interior() const noexcept;
};

/// Jacobi polynomial P_n^{(a,b)}(z) by the three-term recurrence in degree,
/// analytically continued to complex a, b, z.
/// Throws NumericalError("degenerate Jacobi recurrence") when a recurrence
/// denominator falls within 1e-12 of zero.
Complex jacobi_poly(int n, Complex a, Complex b, Complex z);

/// Terminating binomial-sum form of P_n^{(a,b)}(z); defined for every a, b.
Complex jacobi_poly_series(int n, Complex a, Complex b, Complex z);

/// Recurrence with fallback to the series when the recurrence degenerates.
Complex jacobi_poly_robust(int n, Complex a, Complex b, Complex z);

/// Gudermannian gd(x) = atan(sinh(x)), evaluated as 2 atan(tanh(x/2)) so it
/// never overflows. Odd by construction (bitwise).
double gudermannian(double x);

/// log(cosh(x)) without overflow.
double log_cosh(double x);

/// log(sinh(x)) for x > 0, accurate near 0 and without overflow.
double log_sinh(double x);

double max_abs(std::span<const Complex> v) noexcept;
double norm2(std::span<const Complex> v) noexcept;

/// |<u, v>| / (||u|| ||v||); 0 if either vector vanishes.
double overlap(std::span<const Complex> u, std::span<const Complex> v) noexcept;

}  // namespace susypt
