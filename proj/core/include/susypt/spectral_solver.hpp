#pragma once

// Finite-difference Hamiltonians and a dense complex nonsymmetric eigensolver
// (Householder Hessenberg reduction + single-shift complex QR), plus the
// bookkeeping that turns raw eigenvalues into matched bound-state spectra.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "susypt/complex_special.hpp"
#include "susypt/shape_invariance.hpp"

namespace susypt {

/// Square complex matrix stored row-major.
class DenseComplexMatrix {
 public:
  /// Zero matrix. Throws ParameterError if order < 2.
  explicit DenseComplexMatrix(std::size_t order);
  /// Throws ParameterError unless entries.size() == order^2 and order >= 2.
  DenseComplexMatrix(std::size_t order, std::vector<Complex> entries);

  std::size_t order() const noexcept { return n_; }
  Complex& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
  std::span<const Complex> entries() const noexcept { return a_; }

  std::vector<Complex> apply(std::span<const Complex> x) const;
  double frobenius_norm() const noexcept;

 private:
  std::size_t n_;
  std::vector<Complex> a_;
};

inline constexpr std::size_t kMinHamiltonianPoints = 50;
inline constexpr std::size_t kDefaultOrderCap = 2000;
inline constexpr int kDefaultMaxIters = 300;

/// -d^2/dx^2 + V with second-order central differences and Dirichlet walls:
/// diagonal 2/h^2 + V_j, off-diagonals -1/h^2, order n_points - 2.
/// Throws ParameterError for fewer than 50 grid points.
DenseComplexMatrix discretize_hamiltonian(const GridFunction& V);

/// All eigenvalues of M. `tol` is the relative deflation threshold (0 selects
/// machine epsilon); `max_iters` bounds the QR sweeps spent on any single
/// eigenvalue. Throws ParameterError above `order_cap` and NumericalError,
/// naming the active window, when an eigenvalue fails to converge.
std::vector<Complex> eigenvalues(const DenseComplexMatrix& M, double tol = 0.0,
                                 int max_iters = kDefaultMaxIters,
                                 std::size_t order_cap = kDefaultOrderCap);

/// Eigenvector of the discretized Hamiltonian of V (interior nodes only) for an
/// approximate eigenvalue E, by tridiagonal inverse iteration. Scaled to unit
/// peak.
std::vector<Complex> inverse_iteration(const GridFunction& V, Complex E, int sweeps = 3);

/// |psi| at the outermost interior nodes relative to max |psi|.
double boundary_amplitude(std::span<const Complex> psi) noexcept;

inline constexpr double kBoundaryAmplitudeLimit = 1e-4;

/// Every eigenvalue of discretize_hamiltonian(V) passing the bound-state tests
/// of filter_bound_states, sorted by real part.
std::vector<Complex> bound_state_candidates(std::span<const Complex> raw, const GridFunction& V);

/// Bound-state survivors among the raw eigenvalues of discretize_hamiltonian(V):
/// eigenvectors must decay to < 1e-4 of their peak at the walls, and values on
/// a continuum ray (E - V_end real and >= 0 at either end) are discarded.
/// A flat V keeps everything. Returns the lowest `count` by real part; throws
/// DomainError("grid/domain too small ...") when fewer survive.
std::vector<Complex> filter_bound_states(std::span<const Complex> raw, const GridFunction& V,
                                         std::size_t count);

struct LevelMatch {
  int n = 0;
  Complex analytic;
  Complex numeric;
  double abs_error = 0.0;
};

struct EigenReport {
  std::vector<Complex> eigenvalues;
  std::vector<double> residuals;  // filled only when eigenvectors were computed
  std::vector<LevelMatch> matched;
  std::vector<int> unmatched_analytic;
  int artifacts_discarded = 0;

  bool all_matched() const noexcept { return unmatched_analytic.empty(); }
};

/// Greedy nearest-neighbour matching of each analytic level (in order) to the
/// closest unused numeric value. Levels farther than `tol` are unmatched.
EigenReport match_spectra(std::span<const Complex> numeric, const SpectrumResult& analytic,
                          double tol);

struct PairingResult {
  bool closed = false;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (i, i) for real values
};

/// Whether the multiset is closed under complex conjugation within tol.
PairingResult cc_pair_check(std::span<const Complex> values, double tol);

/// ||M psi - E psi||_2 / ||psi||_2. psi holds either the interior values
/// (size == order) or the full grid including both walls (size == order + 2).
double eigen_residual(const DenseComplexMatrix& M, std::span<const Complex> psi, Complex E);
double eigen_residual(const DenseComplexMatrix& M, const GridFunction& psi, Complex E);

}  // namespace susypt
