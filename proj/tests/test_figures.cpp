#include <cmath>
#include <sstream>

#include "doctest.h"
#include "ppwave/errors.hpp"
#include "ppwave/figures.hpp"
#include "ppwave/io.hpp"

using namespace ppwave;

TEST_CASE("figure setups classify as captioned") {
  CHECK(figure_setup(1).spec.kind == CaseKind::Hyperbolic);
  CHECK(figure_setup(2).spec.kind == CaseKind::Trigonometric);
  CHECK(figure_setup(3).spec.kind == CaseKind::Degenerate);
  CHECK(figure_setup(3).spec.coeffs.lambda == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(figure_setup(0), InvalidInput);
  CHECK_THROWS_AS(figure_setup(4), InvalidInput);
  CHECK_FALSE(figure_setup(3).notes.empty());
}

TEST_CASE("figure 1 profile has one pole near -0.476") {
  const auto f = figure_setup(1);
  const Profile p = sample_profile(f.spec, f.x_lo, f.x_hi, f.n, f.t);
  const auto poles = detect_poles(p);
  REQUIRE(poles.size() == 1);
  CHECK(std::abs(poles[0] - (-0.4760851623845658)) < 1e-3);
  // Flagged samples are NaN and everything else is finite.
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    CHECK(std::isnan(p.u[i]) == static_cast<bool>(p.pole_adjacent[i]));
  }
  CHECK(p.x.front() == f.x_lo);
  CHECK(p.x.back() == f.x_hi);
}

TEST_CASE("figure 2 period from the autocorrelation") {
  const auto f = figure_setup(2);
  const Profile p = sample_profile(f.spec, f.x_lo, f.x_hi, f.n, f.t);
  const double period = autocorrelation_period(p);
  CHECK(std::abs(period - 7.114306424594203) < 1e-2);
  CHECK(autocorrelation_period(p, kernels::Exec::Serial) == period);
}

TEST_CASE("figure 3 has a single simple pole at xi = -2") {
  const auto f = figure_setup(3);
  const Profile p = sample_profile(f.spec, f.x_lo, f.x_hi, f.n, f.t);
  const auto poles = detect_poles(p);
  REQUIRE(poles.size() == 1);
  const double c = f.spec.coeffs.c;
  const auto xi = find_singularities(f.spec, f.x_lo - c * f.t, f.x_hi - c * f.t);
  REQUIRE(xi.size() == 1);
  CHECK(std::abs(xi[0] + 2.0) < 1e-6);
  CHECK(std::abs(poles[0] - (xi[0] + c * f.t)) < p.x[1] - p.x[0]);
  CHECK(pole_residue(p, f.spec, poles[0]) == doctest::Approx(std::sqrt(2.0)).epsilon(2e-3));
}

TEST_CASE("profile without poles") {
  const auto spec = make_solution(Family::SetA, Branch::Upper, 1.2, 0.2, 5.9, 3.0, 10, 20);
  const Profile p = sample_profile(spec, -5, 5, 101, 0);
  CHECK(detect_poles(p).empty());
  CHECK_THROWS_AS(sample_profile(spec, 5, -5, 101, 0), InvalidInput);
  CHECK_THROWS_AS(pole_residue(p, spec, 0.0), InvalidInput);
}

TEST_CASE("csv and svg writers") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(-2.0) == "-2");
  const auto f = figure_setup(1);
  const Profile p = sample_profile(f.spec, -1, 1, 21, 0, 0.05);
  std::ostringstream csv;
  io::write_profile_csv(csv, {{"a", "1"}, {"b", "x y"}}, p);
  const std::string s = csv.str();
  CHECK(s.rfind("# a=1\n# b=x y\nx,u,v,pole\n", 0) == 0);
  CHECK(s.find(",,,1\n") != std::string::npos);
  CHECK(s.find(",0\n") != std::string::npos);

  std::ostringstream svg;
  io::write_profile_svg(svg, p, {});
  const std::string g = svg.str();
  CHECK(g.find("<svg") != std::string::npos);
  CHECK(g.find("stroke-dasharray") != std::string::npos);
  CHECK(g.find("</svg>") != std::string::npos);
}

TEST_CASE("key-value parsing") {
  const auto kv = io::parse_key_value("# comment\n k = 5.9 \n\n;x\nalpha0=1.2\n");
  CHECK(kv.size() == 2);
  CHECK(kv.at("k") == "5.9");
  CHECK(kv.at("alpha0") == "1.2");
  CHECK_THROWS_AS(io::parse_key_value("novalue\n"), InvalidInput);
  CHECK_THROWS_AS(io::read_key_value_file("/nonexistent/file.cfg"), InvalidInput);
}
