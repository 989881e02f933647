#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ppwave/errors.hpp"
#include "ppwave/verification.hpp"

using namespace ppwave;

namespace {

SolutionSpec fig1() { return make_solution(Family::SetA, Branch::Upper, 1.2, 0.2, 5.9, 3.0, 20, 10); }
SolutionSpec fig2() {
  return make_solution(Family::SetA, Branch::Upper, 3.0, 5.0, 12.2, 2.0, 20, -10);
}
SolutionSpec extinction() {
  return make_solution(Family::SetB, Branch::Upper, std::sqrt(2.0), 1.0, 2.03, 3.0, 1, 0);
}

}  // namespace

TEST_CASE("ode_residual examples") {
  const auto rep = ode_residual(fig1(), -5, 5, 2001);
  CHECK(rep.max_abs() < 1e-8);
  CHECK(rep.n_excluded > 0);
  CHECK(rep.exclusion_radius == doctest::Approx(10 * 10.0 / 2000));
  CHECK(rep.equations.size() == 2);

  CHECK(ode_residual(extinction(), -10, 10, 2001).max_abs() == 0.0);

  auto bad = fig1();
  bad.coeffs.c += 0.1;
  const auto perturbed = ode_residual(bad, -5, 5, 2001);
  CHECK(perturbed.max_abs() > 1e-2);
}

TEST_CASE("ode_residual rejects windows that are all excluded") {
  CHECK_THROWS_AS(ode_residual(fig1(), -0.4770, -0.4752, 16), InvalidInput);
  CHECK_THROWS_AS(ode_residual(fig1(), -5, 5, 8), InvalidInput);
}

TEST_CASE("ode_residual honours an explicit exclusion radius") {
  ResidualOptions o;
  o.exclusion_radius = 0.5;
  const auto wide = ode_residual(fig1(), -5, 5, 2001, o);
  const auto narrow = ode_residual(fig1(), -5, 5, 2001);
  CHECK(wide.n_excluded > narrow.n_excluded);
  CHECK(wide.exclusion_radius == 0.5);
}

TEST_CASE("pde_residual examples") {
  const auto rep = pde_residual(fig1(), 1, 5, 0, 0.2, 401, 101);
  CHECK(rep.max_abs() < 1e-5);
  REQUIRE(rep.truncation_scale);
  CHECK(*rep.truncation_scale == doctest::Approx(std::pow(0.01, 4)));

  CHECK(pde_residual(extinction(), -3, 3, 0, 1, 41, 11).max_abs() == 0.0);

  auto bad = fig1();
  bad.coeffs.beta_model += 1.0;
  CHECK(pde_residual(bad, 1, 5, 0, 0.2, 401, 101).max_abs() > 1e-1);
}

TEST_CASE("pde_residual converges at fourth order") {
  const auto coarse = pde_residual(fig1(), 1, 5, 0, 0.2, 101, 26);
  const auto fine = pde_residual(fig1(), 1, 5, 0, 0.2, 201, 51);
  const double ratio = coarse.max_abs() / fine.max_abs();
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("pde_residual names the first pole contact") {
  try {
    (void)pde_residual(fig1(), -2, 2, 0, 0.1, 41, 11);
    FAIL("expected PoleInWindow");
  } catch (const PoleInWindow& e) {
    CHECK(std::abs(e.x() - e.t() * fig1().coeffs.c - (-0.4760851623845658)) < 1e-6);
  }
  CHECK_THROWS_AS(pde_residual(fig1(), 1, 5, 0, 0.2, 7, 101), InvalidInput);
}

TEST_CASE("check_G_ode examples") {
  const auto grid = uniform_grid(-10, 10, 1001);
  const auto e = derive_set_a(1.2, 0.2, 5.9, 3.0, Branch::Upper);
  CHECK(check_G_ode(make_g_function(CaseKind::Hyperbolic, e.lambda, e.mu, 20, 10), grid).max_abs() <
        1e-12);
  CHECK(check_G_ode(make_g_function(CaseKind::Degenerate, 2, 1, 1, 0), grid).max_abs() < 1e-15);
  CHECK(check_G_ode(make_g_function(CaseKind::Trigonometric, 0, 1, 1, 1), grid).max_abs() < 1e-13);
}

TEST_CASE("property: check_G_ode over random draws") {
  std::mt19937_64 rng(41);
  const auto grid = uniform_grid(-10, 10, 201);
  for (CaseKind kind : {CaseKind::Hyperbolic, CaseKind::Trigonometric, CaseKind::Degenerate}) {
    for (int i = 0; i < 300; ++i) {
      const double lam = oracle::uniform(rng, -3, 3);
      double mu = lam * lam / 4;
      if (kind == CaseKind::Hyperbolic) mu -= oracle::uniform(rng, 0.01, 3);
      if (kind == CaseKind::Trigonometric) mu += oracle::uniform(rng, 0.01, 3);
      const auto g = make_g_function(kind, lam, mu, oracle::uniform(rng, -20, 20),
                                     oracle::uniform(rng, -20, 20));
      CHECK(check_G_ode(g, grid).max_abs() < 1e-12);
    }
  }
}

TEST_CASE("derivative_crosscheck examples") {
  const GFunction g1 = fig1().aux();
  auto phi1 = [&](double xi) {
    const PhiValue p = eval_phi_with_derivative(g1, xi);
    return ValueAndSlope{p.phi, p.dphi};
  };
  CHECK(derivative_crosscheck(phi1, uniform_grid(1, 5, 401), 1e-3) < 1e-9);

  const GFunction flat = make_g_function(CaseKind::Degenerate, 2, 1, 1, 0);
  auto phi_flat = [&](double xi) {
    const PhiValue p = eval_phi_with_derivative(flat, xi);
    return ValueAndSlope{p.phi, p.dphi};
  };
  CHECK(derivative_crosscheck(phi_flat, uniform_grid(-5, 5, 101), 1e-3) == 0.0);

  // u of the trigonometric profile over one period, keeping half a unit from each pole.
  const auto spec2 = fig2();
  const GFunction g2 = spec2.aux();
  const double period = period_case2(g2.lambda, g2.mu);
  const auto poles = find_singularities(g2, 0, 2 * period);
  REQUIRE(!poles.empty());
  std::vector<double> grid;
  for (double xi : uniform_grid(poles[0], poles[0] + period, 2001)) {
    bool near = false;
    for (double p : poles) near = near || std::abs(xi - p) < 0.5;
    if (!near) grid.push_back(xi);
  }
  auto u2 = [&](double xi) {
    const PhiValue p = eval_phi_with_derivative(g2, xi);
    return ValueAndSlope{spec2.coeffs.alpha1 * p.phi + spec2.coeffs.alpha0, spec2.coeffs.alpha1 * p.dphi};
  };
  CHECK(derivative_crosscheck(u2, grid, 1e-3) < 1e-8);
  CHECK_THROWS_AS(derivative_crosscheck(u2, grid, 0.0), InvalidInput);
}

TEST_CASE("property: every figure-regime combination solves the ODE system") {
  std::mt19937_64 rng(42);
  for (Family fam : {Family::SetA, Family::SetB})
    for (Branch br : {Branch::Upper, Branch::Lower})
      for (CaseKind kind : {CaseKind::Hyperbolic, CaseKind::Trigonometric, CaseKind::Degenerate})
        for (int i = 0; i < 10; ++i) {
          const auto spec = oracle::random_spec(rng, fam, br, kind);
          if (!spec) continue;
          CHECK(ode_residual(*spec, -10, 10, 2001).max_abs() < 1e-8);
        }
}

TEST_CASE("reports are identical for serial and threaded evaluation") {
  ResidualOptions serial, threaded;
  serial.exec = kernels::Exec::Serial;
  threaded.exec = kernels::Exec::OpenMP;
  const auto a = ode_residual(fig2(), -10, 10, 4001, serial);
  const auto b = ode_residual(fig2(), -10, 10, 4001, threaded);
  CHECK(to_key_value(a, "ode") == to_key_value(b, "ode"));
  const auto c = pde_residual(fig1(), 1, 5, 0, 0.2, 101, 26, serial);
  const auto d = pde_residual(fig1(), 1, 5, 0, 0.2, 101, 26, threaded);
  CHECK(to_key_value(c, "pde") == to_key_value(d, "pde"));
  const auto e = pde_residual(fig1(), 1, 5, 0, 0.2, 101, 26, threaded);
  CHECK(to_key_value(d, "pde") == to_key_value(e, "pde"));
}

TEST_CASE("serialisation") {
  const auto rep = ode_residual(fig1(), -5, 5, 2001);
  const std::string kv = to_key_value(rep, "ode");
  CHECK(kv.find("ode.kind=ode\n") != std::string::npos);
  CHECK(kv.find("ode.prey.max_abs=") != std::string::npos);
  CHECK(kv.find("ode.predator.l2=") != std::string::npos);
  CHECK(kv.find("ode.n_excluded=") != std::string::npos);
  const std::string text = to_text(rep);
  CHECK(text.find("prey") != std::string::npos);
  CHECK(text.find("excluded") != std::string::npos);
}

TEST_CASE("discriminant diagnostic exposes both quoted forms") {
  const auto a = set_a_special_alpha0(0.2, 5.9, 3.0, Branch::Upper);
  const auto d = discriminant_diagnostic(a);
  CHECK(d.discriminant == doctest::Approx(84.54595).epsilon(1e-6));
  CHECK(d.k_sq_half_minus_2beta == doctest::Approx(d.discriminant).epsilon(1e-12));
  CHECK(d.k_half_minus_2beta == doctest::Approx(70.09095).epsilon(1e-6));
}
