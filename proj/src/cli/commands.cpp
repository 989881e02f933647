#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "ppwave/algebraic_system.hpp"
#include "ppwave/cli.hpp"
#include "ppwave/errors.hpp"
#include "ppwave/figures.hpp"
#include "ppwave/io.hpp"
#include "ppwave/pde_sim.hpp"
#include "ppwave/verification.hpp"

namespace ppwave::cli {

namespace fs = std::filesystem;
using io::format_double;

void SpecArgs::append_header(io::Header& h) const {
  h.emplace_back("family", family);
  h.emplace_back("branch", branch);
  h.emplace_back("case", case_name);
  h.emplace_back("alpha0", format_double(alpha0));
  h.emplace_back("mu", format_double(mu));
  h.emplace_back("k", format_double(k));
  h.emplace_back("delta", format_double(delta));
  h.emplace_back("c1", format_double(c1));
  h.emplace_back("c2", format_double(c2));
}

SolutionSpec build_spec(const SpecArgs& a, double eps_disc) {
  const Family fam = parse_family(a.family);
  const Branch br = parse_branch(a.branch);
  if (a.case_name.empty()) return make_solution(fam, br, a.alpha0, a.mu, a.k, a.delta, a.c1, a.c2, eps_disc);
  return make_solution(fam, br, parse_case_kind(a.case_name), a.alpha0, a.mu, a.k, a.delta, a.c1,
                       a.c2, eps_disc);
}

namespace {

io::Header base_header(const char* command) {
  return {{"ppwave_version", io::kVersion}, {"command", command}};
}

// Records the resolved case so the header reproduces the run exactly.
SpecArgs resolved(SpecArgs a, const SolutionSpec& spec) {
  a.case_name = std::string(to_string(spec.kind));
  return a;
}

void append_derived(io::Header& h, const SolutionSpec& s) {
  const ExpansionCoeffs& e = s.coeffs;
  h.emplace_back("derived.alpha1", format_double(e.alpha1));
  h.emplace_back("derived.beta1", format_double(e.beta1));
  h.emplace_back("derived.beta0", format_double(e.beta0));
  h.emplace_back("derived.lambda", format_double(e.lambda));
  h.emplace_back("derived.wave_speed", format_double(e.c));
  h.emplace_back("derived.beta", format_double(e.beta_model));
  h.emplace_back("derived.discriminant", format_double(discriminant(e.lambda, e.mu)));
  h.emplace_back("derived.case", std::string(to_string(s.kind)));
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  const fs::path path = fs::path(dir) / name;
  std::ofstream os(path);
  if (!os) throw InvalidInput("cannot write '" + path.string() + "'");
  return os;
}

std::string join(const std::vector<double>& xs) {
  std::ostringstream os;
  os << std::setprecision(8);
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i];
  return os.str();
}

}  // namespace

int cmd_eval(const EvalArgs& a, std::ostream& log) {
  const SolutionSpec spec = build_spec(a.spec, a.tol);
  if (a.n < 2) throw InvalidInput("eval: n must be at least 2");
  // Only samples where the denominator underflows the pole floor are blanked.
  const Profile p = sample_profile(spec, a.x_min, a.x_max, a.n, a.t, 0.0);

  io::Header h = base_header("eval");
  resolved(a.spec, spec).append_header(h);
  h.emplace_back("x-min", format_double(a.x_min));
  h.emplace_back("x-max", format_double(a.x_max));
  h.emplace_back("t", format_double(a.t));
  h.emplace_back("n", std::to_string(a.n));
  h.emplace_back("tol", format_double(a.tol));
  append_derived(h, spec);
  auto os = open_output(a.out, "eval.csv");
  io::write_profile_csv(os, h, p);

  std::vector<double> poles = find_singularities(spec, wave_coordinate(spec, a.x_min, a.t),
                                                 wave_coordinate(spec, a.x_max, a.t));
  for (double& q : poles) q += spec.coeffs.c * a.t;
  log << "case " << to_string(spec.kind) << ", lambda^2 - 4 mu = "
      << discriminant(spec.coeffs.lambda, spec.coeffs.mu) << ", wave speed " << spec.coeffs.c << "\n";
  log << poles.size() << " pole(s) in the window" << (poles.empty() ? "" : " at x = " + join(poles))
      << "\n";
  log << "wrote " << (fs::path(a.out) / "eval.csv").string() << "\n";
  return kOk;
}

int cmd_figure(const FigureArgs& a, std::ostream& log) {
  const FigureSetup f = figure_setup(a.number);
  const Profile p = sample_profile(f.spec, f.x_lo, f.x_hi, f.n, f.t);

  io::Header h = base_header("figure");
  h.emplace_back("number", std::to_string(a.number));
  // The figure's own parameters are fixed; echo them under a namespace the config loader skips.
  SpecArgs sa{std::string(to_string(f.spec.family)), std::string(to_string(f.spec.branch)),
              std::string(to_string(f.spec.kind)), f.spec.coeffs.alpha0, f.spec.coeffs.mu,
              f.spec.coeffs.k, f.spec.coeffs.delta, f.spec.c1, f.spec.c2};
  io::Header fh;
  sa.append_header(fh);
  fh.emplace_back("t", format_double(f.t));
  fh.emplace_back("x-min", format_double(f.x_lo));
  fh.emplace_back("x-max", format_double(f.x_hi));
  fh.emplace_back("n", std::to_string(f.n));
  for (auto& [key, value] : fh) h.emplace_back("figure." + key, value);
  append_derived(h, f.spec);
  for (std::size_t i = 0; i < f.notes.size(); ++i) h.emplace_back("note" + std::to_string(i + 1), f.notes[i]);

  const std::string stem = "figure_" + std::to_string(a.number);
  {
    auto os = open_output(a.out, stem + ".csv");
    io::write_profile_csv(os, h, p);
  }
  {
    auto os = open_output(a.out, stem + ".svg");
    io::SvgStyle style;
    std::ostringstream title;
    title << "Figure " << a.number << ": " << to_string(f.spec.kind) << " case, t = " << f.t;
    style.title = title.str();
    io::write_profile_svg(os, p, style);
  }

  std::vector<double> pole_xi;
  for (double x : detect_poles(p)) pole_xi.push_back(wave_coordinate(f.spec, x, f.t));
  log << "figure " << a.number << ": " << to_string(f.spec.kind) << " case (lambda = "
      << f.spec.coeffs.lambda << ", 2 sqrt(mu) = " << 2.0 * std::sqrt(f.spec.coeffs.mu) << ")\n";
  log << "  poles in xi: " << (pole_xi.empty() ? "none" : join(pole_xi)) << "\n";
  if (f.spec.kind == CaseKind::Trigonometric) {
    log << "  autocorrelation period " << autocorrelation_period(p) << " (closed form "
        << period_case2(f.spec.coeffs.lambda, f.spec.coeffs.mu) << ")\n";
  }
  for (const auto& n : f.notes) log << "  note: " << n << "\n";
  log << "wrote " << (fs::path(a.out) / (stem + ".csv")).string() << " and .svg\n";
  return kOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& log) {
  SolutionSpec spec = build_spec(a.spec, kDefaultDiscTol);
  spec.coeffs.c += a.c_shift;
  spec.coeffs.beta_model += a.beta_shift;

  std::vector<std::string> failures;
  std::ostringstream text, kv;
  io::Header h = base_header("verify");
  resolved(a.spec, spec).append_header(h);
  h.emplace_back("xi-min", format_double(a.xi_min));
  h.emplace_back("xi-max", format_double(a.xi_max));
  h.emplace_back("samples", std::to_string(a.samples));
  h.emplace_back("pde", a.pde ? "true" : "false");
  h.emplace_back("x-min", format_double(a.x_min));
  h.emplace_back("x-max", format_double(a.x_max));
  h.emplace_back("t-min", format_double(a.t_min));
  h.emplace_back("t-max", format_double(a.t_max));
  h.emplace_back("nx", std::to_string(a.nx));
  h.emplace_back("nt", std::to_string(a.nt));
  h.emplace_back("tol", format_double(a.tol));
  h.emplace_back("pde-tol", format_double(a.pde_tol));
  h.emplace_back("c-shift", format_double(a.c_shift));
  h.emplace_back("beta-shift", format_double(a.beta_shift));
  io::write_header(text, h);
  io::write_header(kv, h);

  const ResidualReport ode = ode_residual(spec, a.xi_min, a.xi_max, a.samples);
  text << to_text(ode);
  kv << to_key_value(ode, "ode");
  for (const auto& e : ode.equations) {
    if (!(e.max_abs < a.tol)) failures.push_back("ode." + e.name);
  }
  if (a.pde) {
    const ResidualReport pde = pde_residual(spec, a.x_min, a.x_max, a.t_min, a.t_max, a.nx, a.nt);
    text << to_text(pde);
    kv << to_key_value(pde, "pde");
    for (const auto& e : pde.equations) {
      if (!(e.max_abs < a.pde_tol)) failures.push_back("pde." + e.name);
    }
  }
  const DiscriminantDiagnostic d = discriminant_diagnostic(spec.coeffs);
  text << "diagnostic: lambda^2 - 4 mu = " << d.discriminant << ", k/2 - 2 beta = "
       << d.k_half_minus_2beta << ", k^2/2 - 2 beta = " << d.k_sq_half_minus_2beta << "\n";
  kv << "diagnostic.discriminant=" << format_double(d.discriminant) << "\n";
  kv << "diagnostic.k_half_minus_2beta=" << format_double(d.k_half_minus_2beta) << "\n";
  kv << "diagnostic.k_sq_half_minus_2beta=" << format_double(d.k_sq_half_minus_2beta) << "\n";
  for (const auto& f : failures) text << "FAIL " << f << "\n";
  text << (failures.empty() ? "PASS" : "FAIL") << "\n";
  kv << "status=" << (failures.empty() ? "pass" : "fail") << "\n";
  for (std::size_t i = 0; i < failures.size(); ++i) kv << "failed." << i << "=" << failures[i] << "\n";

  open_output(a.out, "verify_report.txt") << text.str();
  open_output(a.out, "verify_report.kv") << kv.str();
  log << to_text(ode);
  for (const auto& f : failures) log << "FAIL " << f << "\n";
  log << (failures.empty() ? "all residual thresholds pass\n" : "verification failed\n");
  return failures.empty() ? kOk : kVerificationFailed;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& log) {
  const SolutionSpec spec = build_spec(a.spec, kDefaultDiscTol);
  if (!(a.dx > 0.0) || !(a.x_max > a.x_min)) throw InvalidInput("simulate: need dx > 0 and x-max > x-min");
  const double cells = (a.x_max - a.x_min) / a.dx;
  const auto n = static_cast<std::size_t>(std::llround(cells)) + 1;
  if (std::abs(cells - std::round(cells)) > 1e-9 * cells) {
    throw InvalidInput("simulate: (x-max - x-min) must be a multiple of dx");
  }

  SimConfig cfg;
  cfg.k = spec.coeffs.k;
  cfg.delta = spec.coeffs.delta;
  cfg.beta = spec.coeffs.beta_model;
  if (a.bc == "neumann") {
    cfg.bc = Boundary::NeumannZeroFlux;
  } else if (a.bc == "periodic") {
    cfg.bc = Boundary::Periodic;
  } else {
    throw InvalidInput("simulate: bc must be neumann or periodic");
  }
  cfg.dt = a.dt;
  cfg.t_end = a.t_end;
  cfg.snapshot_every = a.snapshot_every;
  cfg.safety = a.safety;

  GridField init;
  if (a.seed == "exact") {
    init = sample_exact(spec, a.x_min, a.dx, n, 0.0);
  } else if (a.seed == "extinction") {
    init.x0 = a.x_min;
    init.dx = a.dx;
    init.u.assign(n, 0.0);
    init.v.assign(n, 0.0);
  } else {
    throw InvalidInput("simulate: seed must be exact or extinction");
  }
  check_config(init, cfg);
  const std::vector<GridField> snaps = simulate(init, cfg);

  io::Header h = base_header("simulate");
  resolved(a.spec, spec).append_header(h);
  h.emplace_back("seed", a.seed);
  h.emplace_back("bc", a.bc);
  h.emplace_back("x-min", format_double(a.x_min));
  h.emplace_back("x-max", format_double(a.x_max));
  h.emplace_back("dx", format_double(a.dx));
  h.emplace_back("dt", format_double(a.dt));
  h.emplace_back("t-end", format_double(a.t_end));
  h.emplace_back("snapshot-every", std::to_string(a.snapshot_every));
  h.emplace_back("safety", format_double(a.safety));
  append_derived(h, spec);
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    std::ostringstream name;
    name << "snapshot_" << std::setw(4) << std::setfill('0') << i << ".csv";
    auto os = open_output(a.out, name.str());
    io::write_field_csv(os, h, snaps[i]);
  }
  log << "wrote " << snaps.size() << " snapshots to " << a.out << "\n";

  int code = kOk;
  std::ostringstream report;
  io::write_header(report, h);
  if (a.measure_speed) {
    double level;
    if (a.level) {
      level = *a.level;
    } else if (a.seed == "exact" && spec.kind == CaseKind::Hyperbolic) {
      level = front_midpoint_level(spec);
    } else {
      const auto [lo, hi] = std::minmax_element(init.u.begin(), init.u.end());
      level = 0.5 * (*lo + *hi);
    }
    report << "level=" << format_double(level) << "\n";
    try {
      const double speed = measure_wave_speed(snaps, level, Component::U);
      const double predicted = spec.coeffs.c;
      const double rel = std::abs(speed - predicted) / std::abs(predicted);
      report << "measured_speed=" << format_double(speed) << "\n";
      report << "predicted_speed=" << format_double(predicted) << "\n";
      report << "relative_error=" << format_double(rel) << "\n";
      log << "measured speed " << speed << ", predicted " << predicted << ", relative error " << rel
          << "\n";
      if (a.seed == "exact") {
        const double err = interior_max_error(snaps.back(), spec, 0.0, a.interior);
        report << "interior_max_error=" << format_double(err) << "\n";
        log << "interior max deviation from the exact solution at t = " << snaps.back().t << ": "
            << err << "\n";
        if (!(rel <= a.tol)) code = kVerificationFailed;
      }
    } catch (const TrackingError& e) {
      report << "measured_speed=no front\n";
      report << "tracking_note=" << e.what() << "\n";
      log << "no front: " << e.what() << "\n";
    }
  }
  open_output(a.out, "speed.txt") << report.str();
  return code;
}

int cmd_solve(const SolveArgs& a, std::ostream& log) {
  SolveOptions opts;
  opts.accept_residual = a.tol;
  const SolveResult res = solve_families(a.k, a.delta, a.mu, a.alpha0, {}, opts);

  std::ostringstream os;
  io::Header h = base_header("solve");
  h.emplace_back("k", format_double(a.k));
  h.emplace_back("delta", format_double(a.delta));
  h.emplace_back("mu", format_double(a.mu));
  h.emplace_back("alpha0", format_double(a.alpha0));
  h.emplace_back("tol", format_double(a.tol));
  io::write_header(os, h);
  os << res.roots.size() << " distinct root(s) from " << res.starts << " starts ("
     << res.converged_starts << " converged)\n";
  os << std::setprecision(10);
  const int w = 18;
  os << std::left << std::setw(5) << "#" << std::setw(w) << "alpha1" << std::setw(w) << "beta1"
     << std::setw(w) << "beta0" << std::setw(w) << "lambda" << std::setw(w) << "c" << std::setw(w)
     << "beta" << std::setw(11) << "residual" << std::setw(6) << "rank"
     << "closest family (max deviation)\n";
  bool continuum = false;
  for (std::size_t i = 0; i < res.roots.size(); ++i) {
    const FamilyRoot& root = res.roots[i];
    const ExpansionCoeffs& e = root.coeffs;
    const FamilyMatch m = closest_family(e);
    os << std::left << std::setw(5) << i;
    for (double v : pack_unknowns(e)) {
      std::ostringstream cell;
      cell << std::setprecision(10) << v;
      os << std::setw(w) << cell.str() + " ";
    }
    std::ostringstream res_cell;
    res_cell << std::setprecision(3) << root.residual_norm;
    os << std::setw(11) << res_cell.str() + " " << std::setw(6) << root.jacobian_rank << "Set "
       << to_string(m.family) << " " << to_string(m.branch) << " (" << std::setprecision(3)
       << m.deviation << ")" << std::setprecision(10);
    if (!(m.deviation < 1e-6)) os << "  <- not a member of either closed-form family";
    os << "\n";
    continuum = continuum || root.jacobian_rank < kNumUnknowns;
  }
  if (continuum) {
    os << "note: roots with rank < " << kNumUnknowns
       << " are not isolated; they are samples of a continuum of roots\n";
  }
  os << "\nclosed-form families:\n";
  for (Family fam : {Family::SetA, Family::SetB}) {
    for (Branch br : {Branch::Upper, Branch::Lower}) {
      os << "  Set " << to_string(fam) << " " << std::setw(6) << to_string(br) << ": ";
      if (fam == Family::SetB && a.alpha0 == 0.0) {
        os << "not applicable: alpha0=0\n";
        continue;
      }
      const ExpansionCoeffs closed = fam == Family::SetA
                                         ? derive_set_a(a.alpha0, a.mu, a.k, a.delta, br)
                                         : derive_set_b(a.alpha0, a.mu, a.k, a.delta, br);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& r : res.roots) best = std::min(best, unknowns_distance(r.coeffs, closed));
      os << "lambda=" << closed.lambda << " c=" << closed.c << " beta=" << closed.beta_model;
      const double own = coeff_residuals(closed).norm();
      if (best < 1e-6) {
        os << "  found";
      } else if (continuum && own < a.tol && jacobian_rank(closed) < kNumUnknowns) {
        os << "  on the root continuum (own residual " << std::setprecision(3) << own
           << std::setprecision(10) << "), not an isolated root";
      } else {
        os << "  NOT found";
      }
      os << " (deviation " << std::setprecision(3) << best << std::setprecision(10) << ")\n";
    }
  }
  open_output(a.out, "solve.txt") << os.str();
  log << os.str();
  return kOk;
}

int run_guarded(const std::function<int()>& fn, std::ostream& err) {
  try {
    return fn();
  } catch (const CaseMismatch& e) {
    err << "error: " << e.what() << " (discriminant " << e.discriminant() << ")\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const PoleError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace ppwave::cli
