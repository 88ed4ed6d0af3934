#include <benchmark/benchmark.h>

#include <random>

#include "susypt/complex_special.hpp"
#include "susypt/spectral_solver.hpp"
#include "susypt/superpotential.hpp"

using namespace susypt;

namespace {

GridFunction scarf_potential(std::size_t nodes) {
  return reduced_potential({Family::Scarf2Broken, SignBranch::Plus}, ParamSet::scarf_broken(3, 0.75, 1),
                           Partner::Minus, Grid::uniform(-14, 14, nodes));
}

void BM_Eigenvalues(benchmark::State& state) {
  const auto H = discretize_hamiltonian(scarf_potential(std::size_t(state.range(0)) + 2));
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(H));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Eigenvalues)->Arg(200)->Arg(400)->Arg(700)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNCubed);

void BM_RandomEigenvalues(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  DenseComplexMatrix M(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M(i, j) = {g(rng), g(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(M));
}
BENCHMARK(BM_RandomEigenvalues)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Jacobi(benchmark::State& state) {
  const int n = int(state.range(0));
  const Complex a(-2.25, 0.75), b(-2.25, -0.75);
  double x = -0.99;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobi_poly(n, a, b, Complex(x, 0.1)));
    x = x > 0.99 ? -0.99 : x + 1e-3;
  }
}
BENCHMARK(BM_Jacobi)->Arg(2)->Arg(10)->Arg(50);

void BM_Discretize(benchmark::State& state) {
  const auto V = scarf_potential(std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(discretize_hamiltonian(V));
}
BENCHMARK(BM_Discretize)->Arg(701)->Arg(1401);

void BM_ReducedPotential(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(scarf_potential(std::size_t(state.range(0))));
}
BENCHMARK(BM_ReducedPotential)->Arg(701)->Arg(6001);

}  // namespace
BENCHMARK_MAIN();
