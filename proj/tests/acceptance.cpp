// Exit criteria. Run without arguments for all of them, or pass criterion numbers.
// Prints one PASS/FAIL line per criterion; exits non-zero if any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "ppwave/algebraic_system.hpp"
#include "ppwave/cli.hpp"
#include "ppwave/errors.hpp"
#include "ppwave/figures.hpp"
#include "ppwave/pde_sim.hpp"
#include "ppwave/verification.hpp"

using namespace ppwave;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass{false};
  std::string detail;
};

struct Criterion {
  int number;
  std::string title;
  double time_limit;  // seconds
  std::function<Outcome()> run;
};

std::string sci(double x) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << x;
  return os.str();
}

// ---- 1: the closed forms solve the travelling-wave system -------------------------------

Outcome exactness() {
  struct Caption {
    double alpha0, mu, k, delta, c1, c2;
  };
  const Caption fig1{1.2, 0.2, 5.9, 3.0, 20, 10}, fig2{3.0, 5.0, 12.2, 2.0, 20, -10};
  const double mu3 = 1.0, k3 = 2.03;
  const Caption fig3a{(k3 - std::sqrt(8 * mu3)) / 2, mu3, k3, 3.0, 20, 10};  // Set A, lambda^2 = 4 mu
  const Caption fig3b{std::sqrt(2 * mu3), mu3, k3, 3.0, 20, 10};            // Set B, lambda^2 = 4 mu

  std::mt19937_64 rng(20240601);
  std::ostringstream detail;
  bool all = true;
  int combos_ok = 0;
  double worst = 0.0;
  for (Family fam : {Family::SetA, Family::SetB}) {
    for (CaseKind kind : {CaseKind::Hyperbolic, CaseKind::Trigonometric, CaseKind::Degenerate}) {
      std::vector<SolutionSpec> specs;
      // Caption instance: the figure whose parameters produce this case for this family.
      for (const Caption& c : {fig1, fig2, fam == Family::SetA ? fig3a : fig3b}) {
        const ExpansionCoeffs e = fam == Family::SetA
                                      ? derive_set_a(c.alpha0, c.mu, c.k, c.delta, Branch::Upper)
                                      : derive_set_b(c.alpha0, c.mu, c.k, c.delta, Branch::Upper);
        if (classify_case(e.lambda, e.mu) == kind) {
          specs.push_back(make_solution(fam, Branch::Upper, kind, c.alpha0, c.mu, c.k, c.delta, c.c1, c.c2));
          break;
        }
      }
      int random_found = 0;
      for (int i = 0; i < 100; ++i) {
        const Branch br = i % 2 == 0 ? Branch::Upper : Branch::Lower;
        if (auto s = oracle::random_spec(rng, fam, br, kind)) {
          specs.push_back(*s);
          ++random_found;
        }
      }
      const std::string name = std::string(to_string(fam)) + " x " + std::string(to_string(kind));
      if (random_found < 100 || specs.size() < 101) {
        all = false;
        detail << "; " << name << ": " << specs.size() << " of 101 instances exist";
        if (fam == Family::SetB && kind == CaseKind::Trigonometric) {
          detail << " (this family has lambda^2 - 4 mu = (alpha0^2 - 2 mu)^2 / (2 alpha0^2) >= 0)";
        }
        continue;
      }
      double combo_worst = 0.0;
      for (const auto& s : specs) combo_worst = std::max(combo_worst, ode_residual(s, -10, 10, 2001).max_abs());
      worst = std::max(worst, combo_worst);
      if (combo_worst < 1e-8) {
        ++combos_ok;
      } else {
        all = false;
        detail << "; " << name << ": max residual " << sci(combo_worst);
      }
    }
  }
  std::ostringstream head;
  head << combos_ok << "/6 combinations below 1e-8 (worst " << sci(worst) << ")";
  return {all, head.str() + detail.str()};
}

// ---- 2: closure of the coefficient system ---------------------------------------------

Outcome closure() {
  std::mt19937_64 rng(77);
  double worst = 0.0;
  for (Branch br : {Branch::Upper, Branch::Lower}) {
    for (int i = 0; i < 1000; ++i) {
      const double a0 = oracle::uniform(rng, -5, 5), mu = oracle::uniform(rng, -5, 5);
      const double k = oracle::uniform(rng, 1e-9, 10), d = oracle::uniform(rng, 0.1, 10);
      worst = std::max(worst, coeff_residuals(derive_set_a(a0, mu, k, d, br)).max_abs());
    }
    for (int i = 0; i < 1000; ++i) {
      double a0 = oracle::uniform(rng, -5, 5);
      while (std::abs(a0) < 0.1) a0 = oracle::uniform(rng, -5, 5);
      const double mu = oracle::uniform(rng, -5, 5);
      const double k = oracle::uniform(rng, 1e-9, 10), d = oracle::uniform(rng, 0.1, 10);
      worst = std::max(worst, coeff_residuals(derive_set_b(a0, mu, k, d, br)).max_abs());
    }
  }
  return {worst < 1e-12, "4000 draws, max |r_i| = " + sci(worst) + " (limit 1e-12)"};
}

// ---- 3: rediscovery by root finding -----------------------------------------------------

Outcome rediscovery() {
  bool all = true;
  std::ostringstream os;
  for (auto [k, delta, mu, a0] : {std::array{5.9, 3.0, 0.2, 1.2}, std::array{1.0, 1.0, 0.5, 1.0}}) {
    const SolveResult r = solve_families(k, delta, mu, a0);
    os << "(" << k << "," << delta << "," << mu << "," << a0 << "): " << r.roots.size() << " roots";
    for (Family fam : {Family::SetA, Family::SetB})
      for (Branch br : {Branch::Upper, Branch::Lower}) {
        const ExpansionCoeffs want = fam == Family::SetA ? derive_set_a(a0, mu, k, delta, br)
                                                         : derive_set_b(a0, mu, k, delta, br);
        double best = INFINITY;
        for (const auto& root : r.roots) best = std::min(best, unknowns_distance(root.coeffs, want));
        if (!(best < 1e-6)) {
          all = false;
          os << " [" << to_string(fam) << " " << to_string(br) << " missing, " << sci(best) << "]";
        }
      }
    os << "; ";
  }
  os << "closed forms matched within 1e-6";
  return {all, os.str()};
}

// ---- 4: auxiliary ODE ---------------------------------------------------------------------

Outcome aux_ode() {
  std::mt19937_64 rng(404);
  const auto grid = uniform_grid(-10, 10, 201);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const CaseKind kind = static_cast<CaseKind>(i % 3);
    const double lam = oracle::uniform(rng, -5, 5);
    double mu = lam * lam / 4;
    if (kind == CaseKind::Hyperbolic) mu -= oracle::uniform(rng, 0.01, 5);
    if (kind == CaseKind::Trigonometric) mu += oracle::uniform(rng, 0.01, 5);
    const GFunction g = make_g_function(kind, lam, mu, oracle::uniform(rng, -20, 20), oracle::uniform(rng, -20, 20));
    worst = std::max(worst, check_G_ode(g, grid).max_abs());
  }
  return {worst < 1e-12, "1000 draws, max normalised residual " + sci(worst) + " (limit 1e-12)"};
}

// ---- 5 and 8: simulation ------------------------------------------------------------------

SolutionSpec bounded_seed() {
  return make_solution(Family::SetA, Branch::Upper, CaseKind::Hyperbolic, 1.2, 0.2, 5.9, 3.0, 10, 20);
}

struct RunResult {
  double speed;
  double interior_error;
};

RunResult exact_seed_run(double dx, double dt) {
  const SolutionSpec spec = bounded_seed();
  const auto n = static_cast<std::size_t>(std::llround(80.0 / dx)) + 1;
  const GridField init = sample_exact(spec, -40.0, dx, n, 0.0);
  SimConfig cfg;
  cfg.k = spec.coeffs.k;
  cfg.delta = spec.coeffs.delta;
  cfg.beta = spec.coeffs.beta_model;
  cfg.bc = Boundary::NeumannZeroFlux;
  cfg.dt = dt;
  cfg.t_end = 2.0;
  cfg.snapshot_every = static_cast<std::size_t>(std::llround(0.25 / dt));
  const auto snaps = simulate(init, cfg);
  return {measure_wave_speed(snaps, front_midpoint_level(spec), Component::U),
          interior_max_error(snaps.back(), spec, 0.0, 30.0)};
}

Outcome wave_speed() {
  const RunResult r = exact_seed_run(0.05, 1e-3);
  const double predicted = 5.9 / std::sqrt(2.0);
  const double rel = std::abs(std::abs(r.speed) - predicted) / predicted;
  const bool pass = rel < 0.02 && r.speed < 0.0 && r.interior_error < 5e-3;
  std::ostringstream os;
  os << "speed " << std::setprecision(8) << r.speed << " vs -" << predicted << " (rel " << sci(rel)
     << ", limit 2e-2); interior error " << sci(r.interior_error) << " (limit 5e-3)";
  return {pass, os.str()};
}

Outcome convergence() {
  const RunResult coarse = exact_seed_run(0.05, 1e-3);
  const RunResult fine = exact_seed_run(0.025, 2.5e-4);
  const double ratio = coarse.interior_error / fine.interior_error;
  std::ostringstream os;
  os << "errors " << sci(coarse.interior_error) << " -> " << sci(fine.interior_error) << ", ratio "
     << std::setprecision(4) << ratio << " (required [3.5, 4.5])";
  return {ratio >= 3.5 && ratio <= 4.5, os.str()};
}

// ---- 6: figures ---------------------------------------------------------------------------

/// Reads a profile back from the CSV the figure command wrote.
Profile read_profile(const fs::path& file, double t) {
  std::ifstream in(file);
  Profile p;
  p.t = t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    std::stringstream ss(line);
    std::string x, u, v, pole;
    std::getline(ss, x, ',');
    std::getline(ss, u, ',');
    std::getline(ss, v, ',');
    std::getline(ss, pole, ',');
    p.x.push_back(std::stod(x));
    const bool flagged = pole == "1";
    p.u.push_back(flagged ? NAN : std::stod(u));
    p.v.push_back(flagged ? NAN : std::stod(v));
    p.pole_adjacent.push_back(flagged);
  }
  return p;
}

Outcome figures() {
  const fs::path dir = fs::temp_directory_path() / "ppwave_acceptance_figures";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ostringstream log, os;
  bool pass = true;
  for (int n = 1; n <= 3; ++n) {
    if (cli::cmd_figure({n, dir.string()}, log) != 0) return {false, "figure command failed"};
  }

  {
    const FigureSetup f = figure_setup(1);
    const Profile p = read_profile(dir / "figure_1.csv", f.t);
    const auto poles = detect_poles(p);
    const auto roots = find_singularities(f.spec, f.x_lo - f.spec.coeffs.c * f.t, f.x_hi - f.spec.coeffs.c * f.t);
    const bool ok = poles.size() == 1 && roots.size() == 1 && std::abs(poles[0] - roots[0]) < 1e-3 &&
                    std::abs(poles[0] + 0.476) < 1e-3;
    pass = pass && ok;
    os << "fig1: " << poles.size() << " pole(s)";
    if (!poles.empty() && !roots.empty()) os << " at " << std::setprecision(6) << poles[0] << " (root " << roots[0] << ")";
  }
  {
    const FigureSetup f = figure_setup(2);
    const Profile p = read_profile(dir / "figure_2.csv", f.t);
    const double period = autocorrelation_period(p);
    const bool ok = std::abs(period - 7.114) < 1e-2;
    pass = pass && ok;
    os << "; fig2: period " << std::setprecision(6) << period;
  }
  {
    const FigureSetup f = figure_setup(3);
    const Profile p = read_profile(dir / "figure_3.csv", f.t);
    const auto poles = detect_poles(p);
    const double c = f.spec.coeffs.c;
    const auto xi = find_singularities(f.spec, f.x_lo - c * f.t, f.x_hi - c * f.t);
    bool ok = poles.size() == 1 && xi.size() == 1 && std::abs(xi[0] + 2.0) < 1e-6;
    double residue = NAN;
    if (ok) {
      residue = pole_residue(p, f.spec, poles[0]);
      // A simple pole: (u - regular part) * (xi - xi*) tends to alpha1.
      ok = std::abs(residue / f.spec.coeffs.alpha1 - 1.0) < 1e-2;
    }
    pass = pass && ok;
    os << "; fig3: " << poles.size() << " pole(s), xi* = " << std::setprecision(10)
       << (xi.empty() ? NAN : xi[0]) << ", residue " << std::setprecision(6) << residue;
  }
  fs::remove_all(dir);
  return {pass, os.str()};
}

// ---- 7: case classification ---------------------------------------------------------------

Outcome classification() {
  bool pass = true;
  std::ostringstream os;
  const CaseKind expected[3] = {CaseKind::Hyperbolic, CaseKind::Trigonometric, CaseKind::Degenerate};
  for (int n = 1; n <= 3; ++n) {
    const ExpansionCoeffs& e = figure_setup(n).spec.coeffs;
    const double lam = std::abs(e.lambda), two_root_mu = 2.0 * std::sqrt(e.mu);
    const CaseKind got = classify_case(e.lambda, e.mu);
    bool ok = got == expected[n - 1];
    if (n == 1) ok = ok && lam > two_root_mu;
    if (n == 2) ok = ok && lam < two_root_mu;
    if (n == 3) ok = ok && lam == two_root_mu;
    pass = pass && ok;
    os << (n > 1 ? "; " : "") << "fig" << n << " " << to_string(got) << " (|lambda| = " << std::setprecision(8)
       << lam << ", 2 sqrt(mu) = " << two_root_mu << ")";
  }
  return {pass, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "closed forms solve the travelling-wave ODEs", 5.0, exactness},
      {2, "coefficient-system closure", 1.0, closure},
      {3, "families rediscovered by root finding", 10.0, rediscovery},
      {4, "auxiliary ODE residual", 1.0, aux_ode},
      {5, "simulated wave speed and profile", 60.0, wave_speed},
      {6, "figure signatures", 2.0, figures},
      {7, "case classification of the figures", 1.0, classification},
      {8, "simulator second-order convergence", 120.0, convergence},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : all) {
    if (!selected.empty() && !selected.count(c.number)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.time_limit;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::cout << "criterion " << c.number << " " << (pass ? "PASS" : "FAIL") << "  " << c.title << ": "
              << o.detail << " [" << std::fixed << std::setprecision(2) << secs << " s, limit "
              << c.time_limit << " s" << (in_time ? "" : ", TOO SLOW") << "]" << std::defaultfloat
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
