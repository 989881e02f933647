#include <CLI11.hpp>
#include <set>

#include "ppwave/cli.hpp"
#include "ppwave/errors.hpp"

namespace ppwave::cli {

namespace {

void add_spec_options(CLI::App* app, SpecArgs& s) {
  app->add_option("--family", s.family, "coefficient family A or B")->capture_default_str();
  app->add_option("--branch", s.branch, "sign branch upper or lower")->capture_default_str();
  app->add_option("--case", s.case_name,
                  "expected case hyperbolic|trigonometric|degenerate (checked against lambda^2 - 4 mu)");
  app->add_option("--alpha0", s.alpha0, "prey offset alpha0")->capture_default_str();
  app->add_option("--mu", s.mu, "auxiliary stiffness mu")->capture_default_str();
  app->add_option("--k", s.k, "predation gain k")->capture_default_str();
  app->add_option("--delta", s.delta, "closure strength delta")->capture_default_str();
  app->add_option("--c1", s.c1, "integration constant c1")->capture_default_str();
  app->add_option("--c2", s.c2, "integration constant c2")->capture_default_str();
}

bool reserved_key(const std::string& key) {
  static const std::set<std::string> reserved{"ppwave_version", "command"};
  for (const char* prefix : {"derived.", "figure.", "snapshot.", "note"}) {
    if (key.rfind(prefix, 0) == 0) return true;
  }
  return reserved.count(key) > 0;
}

// Flat key=value config: fills every option the command line left unset.
void apply_config(CLI::App* sub, const std::string& path) {
  const auto values = io::read_key_value_file(path);
  for (const auto& [key, value] : values) {
    if (reserved_key(key) || key == "config") continue;
    CLI::Option* opt = nullptr;
    try {
      opt = sub->get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw InvalidInput("config file: unknown key '" + key + "' for '" + sub->get_name() + "'");
    }
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

}  // namespace

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact travelling waves of a diffusive predator-prey system with Allee effect"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(io::kVersion));

  std::string config;
  auto common = [&](CLI::App* sub, std::string& outdir, double& tol, const char* tol_help) {
    sub->add_option("--out", outdir, "output directory")->capture_default_str();
    sub->add_option("--config", config, "flat key=value file; flags override it");
    sub->add_option("--tol", tol, tol_help)->capture_default_str();
  };

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "sample u, v of one exact solution on an x grid");
  add_spec_options(e, eval.spec);
  e->add_option("--x-min", eval.x_min)->capture_default_str();
  e->add_option("--x-max", eval.x_max)->capture_default_str();
  e->add_option("--t", eval.t, "time")->capture_default_str();
  e->add_option("--n", eval.n, "number of samples")->capture_default_str();
  common(e, eval.out, eval.tol, "tie tolerance on lambda^2 - 4 mu");

  FigureArgs fig;
  double fig_tol = 0.0;
  auto* f = app.add_subcommand("figure", "reproduce one of the three published profiles (CSV + SVG)");
  f->add_option("number,--number", fig.number, "figure 1, 2 or 3 (may come from --config)")->check(CLI::Range(1, 3));
  common(f, fig.out, fig_tol, "unused");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "residual checks of an exact solution");
  add_spec_options(v, ver.spec);
  v->add_option("--xi-min", ver.xi_min)->capture_default_str();
  v->add_option("--xi-max", ver.xi_max)->capture_default_str();
  v->add_option("--samples", ver.samples)->capture_default_str();
  v->add_flag("--pde", ver.pde, "also check the PDE residual by finite differences");
  v->add_option("--x-min", ver.x_min)->capture_default_str();
  v->add_option("--x-max", ver.x_max)->capture_default_str();
  v->add_option("--t-min", ver.t_min)->capture_default_str();
  v->add_option("--t-max", ver.t_max)->capture_default_str();
  v->add_option("--nx", ver.nx)->capture_default_str();
  v->add_option("--nt", ver.nt)->capture_default_str();
  v->add_option("--pde-tol", ver.pde_tol)->capture_default_str();
  v->add_option("--c-shift", ver.c_shift, "perturb the wave speed")->capture_default_str();
  v->add_option("--beta-shift", ver.beta_shift, "perturb beta")->capture_default_str();
  common(v, ver.out, ver.tol, "ODE residual threshold");

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "integrate the PDE from an exact or extinction seed");
  add_spec_options(s, sim.spec);
  s->add_option("--seed", sim.seed, "exact | extinction")->capture_default_str();
  s->add_option("--bc", sim.bc, "neumann | periodic")->capture_default_str();
  s->add_option("--x-min", sim.x_min)->capture_default_str();
  s->add_option("--x-max", sim.x_max)->capture_default_str();
  s->add_option("--dx", sim.dx)->capture_default_str();
  s->add_option("--dt", sim.dt)->capture_default_str();
  s->add_option("--t-end", sim.t_end)->capture_default_str();
  s->add_option("--snapshot-every", sim.snapshot_every)->capture_default_str();
  s->add_option("--safety", sim.safety)->capture_default_str();
  s->add_flag("--measure-speed,!--no-measure-speed", sim.measure_speed)->capture_default_str();
  s->add_option("--level", sim.level, "tracked level (default: front midpoint)");
  s->add_option("--interior", sim.interior, "half-width of the error window")->capture_default_str();
  common(s, sim.out, sim.tol, "relative wave-speed tolerance");

  SolveArgs sol;
  auto* q = app.add_subcommand("solve", "rediscover the coefficient families numerically");
  q->add_option("--k", sol.k)->capture_default_str();
  q->add_option("--delta", sol.delta)->capture_default_str();
  q->add_option("--mu", sol.mu)->capture_default_str();
  q->add_option("--alpha0", sol.alpha0)->capture_default_str();
  common(q, sol.out, sol.tol, "residual norm accepted as a root");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  return run_guarded(
      [&]() -> int {
        if (!config.empty()) {
          try {
            apply_config(chosen, config);
          } catch (const CLI::Error& ex) {
            throw InvalidInput(std::string("config file: ") + ex.what());
          }
        }
        if (chosen == e) return cmd_eval(eval, out);
        if (chosen == f) {
          if (f->get_option("--number")->count() == 0) throw InvalidInput("figure: --number is required");
          return cmd_figure(fig, out);
        }
        if (chosen == v) return cmd_verify(ver, out);
        if (chosen == s) return cmd_simulate(sim, out);
        return cmd_solve(sol, out);
      },
      err);
}

}  // namespace ppwave::cli
