#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "ppwave/kernels.hpp"

using namespace ppwave::kernels;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = oracle::uniform(rng, -2, 2);
  return v;
}

}  // namespace

TEST_CASE("rhs serial and threaded agree bitwise") {
  std::mt19937_64 rng(51);
  const Reaction r = Reaction::make(5.9, 6.04, 3.0);
  for (Boundary bc : {Boundary::Periodic, Boundary::NeumannZeroFlux}) {
    for (std::size_t n : {8u, 33u, 1601u}) {
      const auto u = random_vec(rng, n), v = random_vec(rng, n);
      std::vector<double> du1(n), dv1(n), du2(n), dv2(n);
      rhs_serial(r, bc, 0.05, u, v, du1, dv1);
      rhs_omp(r, bc, 0.05, u, v, du2, dv2);
      CHECK(du1 == du2);
      CHECK(dv1 == dv2);
    }
  }
}

TEST_CASE("rhs: reaction terms and boundary stencils") {
  const Reaction r = Reaction::make(2.0, 1.5, 4.0);
  CHECK(r.quad == 2.5);
  const std::size_t n = 16;
  // Constant fields have zero Laplacian under both boundary treatments.
  const std::vector<double> u(n, 0.7), v(n, 0.3);
  for (Boundary bc : {Boundary::Periodic, Boundary::NeumannZeroFlux}) {
    std::vector<double> du(n), dv(n);
    rhs_serial(r, bc, 0.1, u, v, du, dv);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(du[i] == r.prey(0.7, 0.3));
      CHECK(dv[i] == r.predator(0.7, 0.3));
    }
  }
  // Diffusion part: subtract the reaction and compare against hand-written stencils.
  std::vector<double> w(n), zero(n, 0.0), dw(n), dz(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<double>(i * i);
  const double h = 0.5;
  auto lap = [&](std::size_t i) { return dw[i] - r.prey(w[i], 0.0); };
  rhs_serial(r, Boundary::NeumannZeroFlux, h, w, zero, dw, dz);
  CHECK(lap(0) == doctest::Approx(2 * (w[1] - w[0]) / (h * h)));
  CHECK(lap(n - 1) == doctest::Approx(2 * (w[n - 2] - w[n - 1]) / (h * h)));
  CHECK(lap(5) == doctest::Approx(2.0 / (h * h)));
  for (double d : dz) CHECK(d == 0.0);
  rhs_serial(r, Boundary::Periodic, h, w, zero, dw, dz);
  CHECK(lap(0) == doctest::Approx((w[n - 1] - 2 * w[0] + w[1]) / (h * h)));
  CHECK(lap(n - 1) == doctest::Approx((w[n - 2] - 2 * w[n - 1] + w[0]) / (h * h)));
}

TEST_CASE("axpy and rk4_combine agree across execution modes") {
  std::mt19937_64 rng(52);
  const std::size_t n = 4099;
  const auto base = random_vec(rng, n), k1 = random_vec(rng, n), k2 = random_vec(rng, n),
             k3 = random_vec(rng, n), k4 = random_vec(rng, n);
  std::vector<double> a(n), b(n);
  axpy(Exec::Serial, base, 0.3, k1, a);
  axpy(Exec::OpenMP, base, 0.3, k1, b);
  CHECK(a == b);
  CHECK(a[7] == base[7] + 0.3 * k1[7]);
  std::vector<double> y1 = base, y2 = base;
  rk4_combine(Exec::Serial, y1, 0.01, k1, k2, k3, k4);
  rk4_combine(Exec::OpenMP, y2, 0.01, k1, k2, k3, k4);
  CHECK(y1 == y2);
  CHECK(y1[3] == doctest::Approx(base[3] + 0.01 / 6 * (k1[3] + 2 * k2[3] + 2 * k3[3] + k4[3])));
}

TEST_CASE("autocorrelation serial and threaded agree bitwise") {
  std::mt19937_64 rng(53);
  const auto x = random_vec(rng, 5000);
  CHECK(autocorrelation_serial(x, 2500) == autocorrelation_omp(x, 2500));
  CHECK(autocorrelation_serial({}, 3).empty());
}

TEST_CASE("autocorrelation of a sampled sine peaks at its period") {
  const std::size_t n = 4000;
  const double period = 250.0;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(2 * std::numbers::pi * static_cast<double>(i) / period);
  const auto a = autocorrelation_serial(x, 600);
  CHECK(a[0] == doctest::Approx(1.0));
  CHECK(a[250] > 0.9);
  CHECK(a[125] < -0.9);
  // Constant input has zero variance; lag 0 is still defined.
  const std::vector<double> c(10, 3.0);
  const auto ac = autocorrelation_serial(c, 4);
  for (double v : ac) CHECK(v == 0.0);
}

TEST_CASE("first_non_finite") {
  std::vector<double> x{1, 2, 3};
  CHECK(first_non_finite(x) == 3);
  x[1] = std::nan("");
  CHECK(first_non_finite(x) == 1);
  x[0] = INFINITY;
  CHECK(first_non_finite(x) == 0);
}
