#include "ppwave/pde_sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ppwave/errors.hpp"

namespace ppwave {

void validate(const GridField& f) {
  if (f.u.size() != f.v.size()) throw InvalidInput("grid field: u and v differ in length");
  if (f.u.size() < 8) throw InvalidInput("grid field: need at least 8 samples");
  if (!(f.dx > 0.0) || !std::isfinite(f.dx)) throw InvalidInput("grid field: dx must be positive");
  if (!std::isfinite(f.x0) || !std::isfinite(f.t)) throw InvalidInput("grid field: non-finite origin");
  if (kernels::first_non_finite(f.u) != f.u.size() || kernels::first_non_finite(f.v) != f.v.size()) {
    throw InvalidInput("grid field: non-finite sample");
  }
}

SimConfig SimConfig::from_model(const ModelParams& p) {
  if (p.m != p.beta) {
    throw InvalidInput("simulation integrates the reduced system and needs m == beta");
  }
  SimConfig c;
  c.k = p.k;
  c.delta = p.delta;
  c.beta = p.beta;
  return c;
}

void check_config(const GridField& field, const SimConfig& cfg) {
  validate(field);
  if (!(cfg.delta > 0.0)) throw InvalidInput("simulation: delta must be positive");
  if (!std::isfinite(cfg.k) || !std::isfinite(cfg.beta)) throw InvalidInput("simulation: non-finite k or beta");
  if (!(cfg.dt > 0.0)) throw InvalidInput("simulation: dt must be positive");
  if (!(cfg.t_end >= field.t)) throw InvalidInput("simulation: t_end is before the initial time");
  if (!(cfg.safety > 0.0 && cfg.safety <= 1.0)) throw InvalidInput("simulation: safety must lie in (0, 1]");
  const double limit = max_stable_dt(field.dx, cfg.safety);
  if (cfg.dt > limit) {
    std::ostringstream os;
    os << "dt = " << cfg.dt << " exceeds the diffusion limit " << cfg.safety
       << " * dx^2 / 2 = " << limit;
    throw StabilityError(os.str());
  }
}

namespace {

class Stepper {
 public:
  Stepper(const SimConfig& cfg, std::size_t n)
      : cfg_(cfg), reaction_(kernels::Reaction::make(cfg.k, cfg.beta, cfg.delta)) {
    for (auto* b : {&ku1_, &kv1_, &ku2_, &kv2_, &ku3_, &kv3_, &ku4_, &kv4_, &tu_, &tv_}) b->resize(n);
  }

  void advance(GridField& f, double h) {
    const Exec ex = cfg_.exec;
    auto eval = [&](std::span<const double> u, std::span<const double> v, std::vector<double>& du,
                    std::vector<double>& dv) {
      kernels::rhs(ex, reaction_, cfg_.bc, f.dx, u, v, du, dv);
    };
    eval(f.u, f.v, ku1_, kv1_);
    kernels::axpy(ex, f.u, 0.5 * h, ku1_, tu_);
    kernels::axpy(ex, f.v, 0.5 * h, kv1_, tv_);
    eval(tu_, tv_, ku2_, kv2_);
    kernels::axpy(ex, f.u, 0.5 * h, ku2_, tu_);
    kernels::axpy(ex, f.v, 0.5 * h, kv2_, tv_);
    eval(tu_, tv_, ku3_, kv3_);
    kernels::axpy(ex, f.u, h, ku3_, tu_);
    kernels::axpy(ex, f.v, h, kv3_, tv_);
    eval(tu_, tv_, ku4_, kv4_);
    kernels::rk4_combine(ex, f.u, h, ku1_, ku2_, ku3_, ku4_);
    kernels::rk4_combine(ex, f.v, h, kv1_, kv2_, kv3_, kv4_);
  }

 private:
  SimConfig cfg_;
  kernels::Reaction reaction_;
  std::vector<double> ku1_, kv1_, ku2_, kv2_, ku3_, kv3_, ku4_, kv4_, tu_, tv_;
};

void check_finite(const GridField& f) {
  const std::size_t iu = kernels::first_non_finite(f.u);
  const std::size_t iv = kernels::first_non_finite(f.v);
  const std::size_t i = std::min(iu, iv);
  if (i < f.size()) {
    std::ostringstream os;
    os << "non-finite " << (iu <= iv ? "u" : "v") << " at x = " << f.x(i) << ", t = " << f.t;
    throw BlowUp(os.str(), f.t, f.x(i));
  }
}

}  // namespace

GridField step(const GridField& field, const SimConfig& cfg) {
  check_config(field, cfg);
  GridField next = field;
  Stepper(cfg, field.size()).advance(next, cfg.dt);
  next.t = field.t + cfg.dt;
  check_finite(next);
  return next;
}

std::vector<GridField> simulate(const GridField& initial, const SimConfig& cfg) {
  check_config(initial, cfg);
  const double span = cfg.t_end - initial.t;
  // Tolerate t_end/dt landing a hair above an integer.
  const auto n_steps = static_cast<std::size_t>(std::ceil(span / cfg.dt - 1e-9));

  std::vector<GridField> snaps{initial};
  GridField f = initial;
  Stepper stepper(cfg, f.size());
  for (std::size_t s = 1; s <= n_steps; ++s) {
    const double t_next = s == n_steps ? cfg.t_end : initial.t + static_cast<double>(s) * cfg.dt;
    stepper.advance(f, t_next - f.t);
    f.t = t_next;
    check_finite(f);
    const bool cadence = cfg.snapshot_every > 0 && s % cfg.snapshot_every == 0;
    if (cadence || s == n_steps) snaps.push_back(f);
  }
  return snaps;
}

GridField sample_exact(const SolutionSpec& spec, double x0, double dx, std::size_t n, double t) {
  if (n < 2 || !(dx > 0.0)) throw InvalidInput("sample_exact: need n >= 2 and dx > 0");
  const double x1 = x0 + static_cast<double>(n - 1) * dx;
  const double xi_lo = wave_coordinate(spec, x0, t), xi_hi = wave_coordinate(spec, x1, t);
  const auto poles = find_singularities(spec, xi_lo, xi_hi);
  if (!poles.empty()) {
    const double xp = poles.front() + spec.coeffs.c * t;
    std::ostringstream os;
    os << "exact profile has a pole inside the domain at x = " << xp << " (t = " << t << ")";
    throw PoleInWindow(os.str(), xp, t);
  }
  GridField f;
  f.x0 = x0;
  f.dx = dx;
  f.t = t;
  f.u.resize(n);
  f.v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const FieldValue w = eval_uv(spec, f.x(i), t);
    f.u[i] = w.u;
    f.v[i] = w.v;
  }
  return f;
}

double measure_wave_speed(std::span<const GridField> snapshots, double level, Component component) {
  if (snapshots.size() < 2) throw TrackingError("need at least two snapshots to measure a speed", 0);
  std::vector<double> ts, xs;
  for (std::size_t s = 0; s < snapshots.size(); ++s) {
    const GridField& f = snapshots[s];
    const std::vector<double>& a = component == Component::U ? f.u : f.v;
    std::size_t crossings = 0;
    double pos = 0.0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      const double s0 = a[i] - level, s1 = a[i + 1] - level;
      if ((s0 < 0.0) != (s1 < 0.0)) {
        ++crossings;
        pos = f.x(i) + f.dx * s0 / (s0 - s1);
      }
    }
    if (crossings != 1) {
      std::ostringstream os;
      os << "snapshot " << s << " (t = " << f.t << ") crosses level " << level << " " << crossings
         << " times; expected exactly once";
      throw TrackingError(os.str(), s);
    }
    ts.push_back(f.t);
    xs.push_back(pos);
  }
  double tm = 0.0, xm = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    tm += ts[i];
    xm += xs[i];
  }
  tm /= static_cast<double>(ts.size());
  xm /= static_cast<double>(ts.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sxy += (ts[i] - tm) * (xs[i] - xm);
    sxx += (ts[i] - tm) * (ts[i] - tm);
  }
  if (sxx == 0.0) throw TrackingError("all snapshots share one time", 0);
  return sxy / sxx;
}

double front_midpoint_level(const SolutionSpec& spec) {
  if (spec.kind != CaseKind::Hyperbolic) {
    throw InvalidInput("front_midpoint_level: needs a hyperbolic profile");
  }
  // phi runs between -lambda/2 -+ s, so the midpoint sits at phi = -lambda/2.
  return spec.coeffs.alpha0 - 0.5 * spec.coeffs.alpha1 * spec.coeffs.lambda;
}

double interior_max_error(const GridField& f, const SolutionSpec& spec, double centre,
                          double half_width) {
  double err = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = f.x(i);
    if (std::abs(x - centre) >= half_width) continue;
    const FieldValue w = eval_uv(spec, x, f.t);
    err = std::max({err, std::abs(f.u[i] - w.u), std::abs(f.v[i] - w.v)});
  }
  return err;
}

}  // namespace ppwave
