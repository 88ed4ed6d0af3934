#pragma once

#include <span>
#include <vector>

#include "susypt/complex_special.hpp"
#include "susypt/superpotential.hpp"

namespace susypt {

/// Fourth-order first derivative on a uniform grid: central five-point
/// stencil in the interior, one-sided fourth-order stencils at the two nodes
/// nearest each end. Requires at least 5 samples.
std::vector<Complex> derivative4(std::span<const Complex> f, double h);

/// Second-order central first derivative with first-order one-sided ends.
std::vector<Complex> derivative2(std::span<const Complex> f, double h);

/// Lowering operator A = d/dx + W applied to psi (4th-order differences).
GridFunction apply_lowering(const Superpotential& w, const GridFunction& psi);

/// Raising operator A^dag = -d/dx + W applied to psi (4th-order differences).
GridFunction apply_raising(const Superpotential& w, const GridFunction& psi);

}  // namespace susypt
