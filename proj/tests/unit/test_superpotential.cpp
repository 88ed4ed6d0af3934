#include <doctest.h>

#include <cmath>
#include <random>

#include "susypt/errors.hpp"
#include "susypt/finite_difference.hpp"
#include "susypt/superpotential.hpp"

using namespace susypt;

namespace {

const FamilyId kReal{Family::Scarf2Real, SignBranch::Plus};
const FamilyId kCoulomb{Family::CoulombComplex, SignBranch::Plus};

FamilyId broken(SignBranch s) { return {Family::Scarf2Broken, s}; }

struct Sample {
  FamilyId id;
  ParamSet p;
  double x;
};

}  // namespace

TEST_CASE("eval_W substitutions") {
  const ParamSet p = ParamSet::scarf_real(1, 1, 1);
  CHECK(std::abs(eval_W(kReal, p, 0.0) - kI) < 1e-15);
  CHECK(std::abs(eval_W(kReal, p, 40.0) - 1.0) < 1e-12);
  CHECK(std::abs(eval_W(kCoulomb, ParamSet::coulomb(1, 2), 0.5) - Complex(2, 2)) < 1e-15);
  CHECK(std::abs(eval_W_prime(kReal, p, 0.0) - 1.0) < 1e-15);
  CHECK(std::abs(eval_W_prime(kCoulomb, ParamSet::coulomb(1, 2), 0.5) - Complex(0, -4)) < 1e-14);
}

TEST_CASE("general superpotential by hand") {
  // (A + iC) tanh + (C + iB) sech for the plus branch
  const ParamSet p = ParamSet::scarf(1.3, 0.4, 0.6, 0.8);
  const double x = 0.9, t = std::tanh(0.8 * x), s = 1.0 / std::cosh(0.8 * x);
  const Complex plus = Complex(1.3, 0.6) * t + Complex(0.6, 0.4) * s;
  const Complex minus = Complex(1.3, -0.6) * t + Complex(-0.6, 0.4) * s;
  CHECK(std::abs(eval_W({Family::Scarf2General, SignBranch::Plus}, p, x) - plus) < 1e-15);
  CHECK(std::abs(eval_W({Family::Scarf2General, SignBranch::Minus}, p, x) - minus) < 1e-15);
}

TEST_CASE("W' agrees with a central difference of W") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.3, 2.0);
  std::vector<Sample> samples;
  for (int i = 0; i < 20; ++i) {
    const double A = u(rng), B = u(rng), C = u(rng), al = u(rng), x = u(rng) - 1.0;
    samples.push_back({{Family::Scarf2General, i % 2 ? SignBranch::Plus : SignBranch::Minus},
                       ParamSet::scarf(A, B, C, al), x});
    samples.push_back({kReal, ParamSet::scarf_real(A, B, al), x});
    samples.push_back({broken(SignBranch::Minus), ParamSet::scarf_broken(A, C, al), x});
    samples.push_back({{Family::PoschlTellerC1}, ParamSet::poschl_teller(A, B, al), x + 1.5});
    samples.push_back({{Family::PoschlTellerC2}, ParamSet::poschl_teller(A, B, al), x + 1.5});
    samples.push_back({kCoulomb, ParamSet::coulomb(A, B), x + 1.5});
  }
  const double h = 1e-5;
  for (const auto& s : samples) {
    const Complex fd = (eval_W(s.id, s.p, s.x + h) - eval_W(s.id, s.p, s.x - h)) / (2 * h);
    CHECK(std::abs(fd - eval_W_prime(s.id, s.p, s.x)) < 1e-7);
  }
}

TEST_CASE("domain and parameter errors") {
  CHECK_THROWS_AS(eval_W(kCoulomb, ParamSet::coulomb(1, 2), -0.5), DomainError);
  CHECK_THROWS_AS(eval_W({Family::PoschlTellerC1}, ParamSet::poschl_teller(1, 1, 1), 0.0), DomainError);
  CHECK_THROWS_AS(validate(Family::CoulombComplex, ParamSet::coulomb(1, -1)), ParameterError);
  CHECK_THROWS_AS(validate(Family::Scarf2Broken, ParamSet::scarf(1, 2, 0.5, 1)), ParameterError);
  CHECK_NOTHROW(validate(Family::Scarf2Broken, ParamSet::scarf(1, 1.5, 0.5, 1)));
  CHECK(parse_family("PoschlTellerC2") == Family::PoschlTellerC2);
  CHECK_FALSE(parse_family("Coulomb").has_value());
}

TEST_CASE("reduced partner potentials at the origin") {
  const Grid g = Grid::uniform(-5, 5, 101);
  const auto Vr = reduced_potential(kReal, ParamSet::scarf_real(1, 1, 1), Partner::Minus, g);
  CHECK(std::abs(Vr.values[50] - Complex(-3.0)) < 1e-13);
  const auto Vb = reduced_potential(broken(SignBranch::Plus), ParamSet::scarf_broken(1, 0.75, 1),
                                    Partner::Minus, g);
  CHECK(std::abs(Vb.values[50] - Complex(-3.125)) < 1e-13);
}

TEST_CASE("reduced potential matches the sech/tanh closed form") {
  const double A = 1.7, B = 0.6, al = 0.9;
  const Grid g = Grid::uniform(-4, 4, 81);
  const auto V = reduced_potential(kReal, ParamSet::scarf_real(A, B, al), Partner::Minus, g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.node(i), s = 1 / std::cosh(al * x), t = std::tanh(al * x);
    const Complex ref = -(A * (A + al) + B * B) * s * s + kI * B * (2 * A + al) * s * t;
    CHECK(std::abs(V.values[i] - ref) < 1e-12);
  }
}

TEST_CASE("factorized potential differs from the reduced one by lim W^2") {
  const Grid g = Grid::uniform(-3, 3, 31);
  const ParamSet p = ParamSet::scarf_broken(1.2, 0.4, 1);
  const auto w = make_superpotential(broken(SignBranch::Plus), p);
  const auto full = potential(w, Partner::Plus, g);
  const auto red = reduced_potential(w, Partner::Plus, g);
  const Complex lim2 = w.asymptote() * w.asymptote();
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(full.values[i] - red.values[i] - lim2) < 1e-12);
}

TEST_CASE("both broken superpotentials give one potential") {
  const Grid g = Grid::uniform(-8, 8, 161);
  const ParamSet p = ParamSet::scarf_broken(1, 0.75, 1);
  const auto vp = reduced_potential(broken(SignBranch::Plus), p, Partner::Minus, g);
  const auto vm = reduced_potential(broken(SignBranch::Minus), p, Partner::Minus, g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(vp.values[i] - vm.values[i]) < 1e-12);
}

TEST_CASE("ground state") {
  const ParamSet p = ParamSet::scarf_real(1, 1, 1);
  const Grid g = Grid::uniform(-40, 40, 8001);
  const auto psi = ground_state(kReal, p, g);
  CHECK(std::abs(std::abs(psi.values[4000]) - 1.0) < 1e-12);
  CHECK(psi.max_abs() == doctest::Approx(1.0));

  // discrete annihilation A psi0 = psi0' + W psi0
  const Grid fine = Grid::uniform(-20, 20, 4001);
  const auto w = make_superpotential(kReal, p);
  const auto psi_f = ground_state(w, fine);
  const auto d = derivative4(psi_f.values, fine.spacing());
  double worst = 0;
  for (std::size_t i = 2; i + 2 < fine.size(); ++i) {
    worst = std::max(worst, std::abs(d[i] + w.W(fine.node(i)) * psi_f.values[i]));
  }
  CHECK(worst / psi_f.max_abs() < 1e-4);

  CHECK_THROWS_WITH_AS(ground_state(kReal, p, Grid::uniform(-3, 3, 61)), "grid too small for bound state",
                       DomainError);
}

TEST_CASE("lowering and raising operators") {
  const auto w = make_superpotential(kReal, ParamSet::scarf_real(2, 0.5, 1));
  const Grid g = Grid::uniform(-30, 30, 3001);
  const auto psi0 = ground_state(w, g);
  const auto lowered = apply_lowering(w, psi0);
  CHECK(max_abs(lowered.interior()) < 1e-5);
  const auto raised = apply_raising(w, psi0);
  CHECK(raised.max_abs() > 0.1);
}
