#include "susypt/finite_difference.hpp"

#include "susypt/errors.hpp"

namespace susypt {

std::vector<Complex> derivative4(std::span<const Complex> f, double h) {
  const std::size_t n = f.size();
  if (n < 5) throw ParameterError("fourth-order derivative needs at least 5 samples");
  const double inv = 1.0 / (12.0 * h);
  std::vector<Complex> d(n);
  d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * inv;
  d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * inv;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * inv;
  }
  d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) * inv;
  d[n - 1] =
      (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) * inv;
  return d;
}

std::vector<Complex> derivative2(std::span<const Complex> f, double h) {
  const std::size_t n = f.size();
  if (n < 2) throw ParameterError("derivative needs at least 2 samples");
  std::vector<Complex> d(n);
  d[0] = (f[1] - f[0]) / h;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  d[n - 1] = (f[n - 1] - f[n - 2]) / h;
  return d;
}

GridFunction apply_lowering(const Superpotential& w, const GridFunction& psi) {
  const Grid& g = psi.grid;
  std::vector<Complex> out = derivative4(psi.values, g.spacing());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] += w.W(g.node(i)) * psi.values[i];
  return GridFunction(g, std::move(out));
}

GridFunction apply_raising(const Superpotential& w, const GridFunction& psi) {
  const Grid& g = psi.grid;
  std::vector<Complex> out = derivative4(psi.values, g.spacing());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = w.W(g.node(i)) * psi.values[i] - out[i];
  return GridFunction(g, std::move(out));
}

}  // namespace susypt
