#include "ppwave/verification.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "ppwave/errors.hpp"

namespace ppwave {

double ResidualReport::max_abs() const {
  double m = 0.0;
  for (const auto& e : equations) m = std::max(m, e.max_abs);
  return m;
}

const EquationResidual& ResidualReport::worst() const {
  if (equations.empty()) throw std::logic_error("empty residual report");
  return *std::max_element(equations.begin(), equations.end(),
                           [](const auto& a, const auto& b) { return a.max_abs < b.max_abs; });
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  if (n < 2) throw InvalidInput("uniform_grid: need at least two points");
  std::vector<double> g(n);
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + static_cast<double>(i) * h;
  g.back() = hi;
  return g;
}

namespace {

struct Sample {
  bool used{false};
  double r1{0.0};
  double r2{0.0};
  double scale{1.0};  // max(|u|^3, 1)
};

// Serial, index-ordered reduction so reports do not depend on the thread schedule.
EquationResidual reduce(std::string name, const std::vector<Sample>& samples,
                        const std::vector<double>& xs, const std::vector<double>* ts, bool first,
                        double cell) {
  EquationResidual e;
  e.name = std::move(name);
  double sum = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!samples[i].used) continue;
    const double r = std::abs(first ? samples[i].r1 : samples[i].r2);
    sum += r * r;
    e.max_rel = std::max(e.max_rel, r / samples[i].scale);
    if (!any || r > e.max_abs) {
      e.max_abs = r;
      e.max_x = xs[i];
      if (ts) e.max_t = (*ts)[i];
      any = true;
    }
  }
  e.l2 = std::sqrt(cell * sum);
  return e;
}

}  // namespace

ResidualReport ode_residual(const SolutionSpec& spec, double xi_lo, double xi_hi,
                            std::size_t n_samples, const ResidualOptions& opts) {
  if (n_samples < 16) throw InvalidInput("ode_residual: need at least 16 samples");
  if (!(xi_lo < xi_hi)) throw InvalidInput("ode_residual: need xi_lo < xi_hi");
  validate(spec);

  const std::vector<double> xs = uniform_grid(xi_lo, xi_hi, n_samples);
  const double h = (xi_hi - xi_lo) / static_cast<double>(n_samples - 1);
  const double radius = opts.exclusion_radius.value_or(std::max(10.0 * h, 1e-3));
  const GFunction g = spec.aux();
  const std::vector<double> poles = find_singularities(g, xi_lo - radius, xi_hi + radius);

  const ExpansionCoeffs& e = spec.coeffs;
  const double kq = e.k + 1.0 / std::sqrt(e.delta);
  std::vector<Sample> samples(n_samples);
  const auto n = static_cast<std::ptrdiff_t>(n_samples);
#pragma omp parallel for schedule(static) if (opts.exec == kernels::Exec::OpenMP)
  for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const double xi = xs[i];
    bool near = false;
    for (double p : poles) near = near || std::abs(xi - p) < radius;
    if (near) continue;
    double phi;
    try {
      phi = eval_phi(g, xi);
    } catch (const PoleError&) {
      continue;
    }
    const double dphi = -(e.mu + e.lambda * phi + phi * phi);
    const double d2phi = -(e.lambda + 2.0 * phi) * dphi;
    const double u = e.alpha1 * phi + e.alpha0, v = e.beta1 * phi + e.beta0;
    const double du = e.alpha1 * dphi, dv = e.beta1 * dphi;
    const double d2u = e.alpha1 * d2phi, d2v = e.beta1 * d2phi;
    Sample& s = samples[i];
    s.used = true;
    s.r1 = d2u + e.c * du - e.beta_model * u + kq * u * u - u * u * u - u * v;
    s.r2 = d2v + e.c * dv + e.k * u * v - e.beta_model * v - e.delta * v * v * v;
    s.scale = std::max(std::abs(u * u * u), 1.0);
  }

  ResidualReport rep;
  rep.kind = "ode";
  rep.n_samples = n_samples;
  rep.exclusion_radius = radius;
  for (const auto& s : samples) rep.n_excluded += s.used ? 0 : 1;
  if (rep.n_excluded == n_samples) {
    throw InvalidInput("ode_residual: every sample lies inside a pole-exclusion zone");
  }
  rep.equations.push_back(reduce("prey", samples, xs, nullptr, true, h));
  rep.equations.push_back(reduce("predator", samples, xs, nullptr, false, h));
  return rep;
}

namespace {

// Earliest (x, t) at which some pole x* = xi* + c t enters [xa, xb] for t in [ta, tb].
std::optional<std::pair<double, double>> first_pole_contact(const SolutionSpec& spec, double xa,
                                                            double xb, double ta, double tb) {
  const double c = spec.coeffs.c;
  const double corners[] = {xa - c * ta, xa - c * tb, xb - c * ta, xb - c * tb};
  const double lo = *std::min_element(std::begin(corners), std::end(corners));
  const double hi = *std::max_element(std::begin(corners), std::end(corners));
  const double pad = 1e-9 * std::max(1.0, hi - lo);
  std::optional<std::pair<double, double>> best;
  for (double p : find_singularities(spec, lo - pad, hi + pad)) {
    double t0, t1;
    if (c == 0.0) {
      if (p < xa || p > xb) continue;
      t0 = ta;
      t1 = tb;
    } else {
      t0 = (xa - p) / c;
      t1 = (xb - p) / c;
      if (t0 > t1) std::swap(t0, t1);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
      if (t0 > t1) continue;
    }
    if (!best || t0 < best->second) best = std::make_pair(p + c * t0, t0);
  }
  return best;
}

}  // namespace

ResidualReport pde_residual(const SolutionSpec& spec, double x_lo, double x_hi, double t_lo,
                            double t_hi, std::size_t nx, std::size_t nt,
                            const ResidualOptions& opts) {
  if (nx < 8 || nt < 8) throw InvalidInput("pde_residual: need nx, nt >= 8");
  if (!(x_lo < x_hi) || !(t_lo < t_hi)) throw InvalidInput("pde_residual: empty window");
  validate(spec);

  const double hx = (x_hi - x_lo) / static_cast<double>(nx - 1);
  const double ht = (t_hi - t_lo) / static_cast<double>(nt - 1);
  if (auto hit = first_pole_contact(spec, x_lo - 2.0 * hx, x_hi + 2.0 * hx, t_lo - 2.0 * ht,
                                    t_hi + 2.0 * ht)) {
    std::ostringstream os;
    os << "pole of the travelling frame enters the window at x = " << hit->first
       << ", t = " << hit->second;
    throw PoleInWindow(os.str(), hit->first, hit->second);
  }

  const ExpansionCoeffs& e = spec.coeffs;
  const kernels::Reaction reaction = kernels::Reaction::make(e.k, e.beta_model, e.delta);
  const std::size_t total = nx * nt;
  std::vector<Sample> samples(total);
  std::vector<double> xs(total), ts(total);
  const auto n = static_cast<std::ptrdiff_t>(total);
  // Exceptions may not leave the parallel region; remember the first failing sample instead.
  std::ptrdiff_t failed = n;
#pragma omp parallel for schedule(static) if (opts.exec == kernels::Exec::OpenMP)
  for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
    const auto idx = static_cast<std::size_t>(ii);
    const std::size_t i = idx % nx, j = idx / nx;
    const double x = x_lo + static_cast<double>(i) * hx;
    const double t = t_lo + static_cast<double>(j) * ht;
    xs[idx] = x;
    ts[idx] = t;
    try {
      const FieldValue c0 = eval_uv(spec, x, t);
      const FieldValue xm2 = eval_uv(spec, x - 2.0 * hx, t), xm1 = eval_uv(spec, x - hx, t);
      const FieldValue xp1 = eval_uv(spec, x + hx, t), xp2 = eval_uv(spec, x + 2.0 * hx, t);
      const FieldValue tm2 = eval_uv(spec, x, t - 2.0 * ht), tm1 = eval_uv(spec, x, t - ht);
      const FieldValue tp1 = eval_uv(spec, x, t + ht), tp2 = eval_uv(spec, x, t + 2.0 * ht);
      auto d2x = [&](auto get) {
        return (-get(xm2) + 16.0 * get(xm1) - 30.0 * get(c0) + 16.0 * get(xp1) - get(xp2)) /
               (12.0 * hx * hx);
      };
      auto d1t = [&](auto get) {
        return (get(tm2) - 8.0 * get(tm1) + 8.0 * get(tp1) - get(tp2)) / (12.0 * ht);
      };
      auto gu = [](const FieldValue& f) { return f.u; };
      auto gv = [](const FieldValue& f) { return f.v; };
      Sample& s = samples[idx];
      s.used = true;
      s.r1 = d1t(gu) - d2x(gu) - reaction.prey(c0.u, c0.v);
      s.r2 = d1t(gv) - d2x(gv) - reaction.predator(c0.u, c0.v);
      s.scale = std::max(std::abs(c0.u * c0.u * c0.u), 1.0);
    } catch (const PoleError&) {
#pragma omp critical(ppwave_pde_fail)
      failed = std::min(failed, ii);
    }
  }
  if (failed < n) {
    const auto idx = static_cast<std::size_t>(failed);
    std::ostringstream os;
    os << "stencil touches a pole near x = " << xs[idx] << ", t = " << ts[idx];
    throw PoleInWindow(os.str(), xs[idx], ts[idx]);
  }

  ResidualReport rep;
  rep.kind = "pde";
  rep.n_samples = total;
  const double h = std::max(hx, ht);
  rep.truncation_scale = h * h * h * h;
  rep.equations.push_back(reduce("prey", samples, xs, &ts, true, hx * ht));
  rep.equations.push_back(reduce("predator", samples, xs, &ts, false, hx * ht));
  return rep;
}

ResidualReport check_G_ode(const GFunction& g, std::span<const double> xi_grid,
                           kernels::Exec exec) {
  if (xi_grid.empty()) throw InvalidInput("check_G_ode: empty grid");
  std::vector<double> res(xi_grid.size()), mag(xi_grid.size());
  const auto n = static_cast<std::ptrdiff_t>(xi_grid.size());
#pragma omp parallel for schedule(static) if (exec == kernels::Exec::OpenMP)
  for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const GValue v = eval_G(g, xi_grid[i]);
    res[i] = std::abs(v.d2g + g.lambda * v.dg + g.mu * v.g);
    mag[i] = std::abs(v.g);
  }
  double gmax = 0.0;
  for (double m : mag) gmax = std::max(gmax, m);
  const double norm = gmax > 0.0 ? gmax : 1.0;

  EquationResidual e;
  e.name = "aux";
  double sum = 0.0;
  for (std::size_t i = 0; i < res.size(); ++i) {
    const double r = res[i] / norm;
    sum += r * r;
    if (i == 0 || r > e.max_abs) {
      e.max_abs = r;
      e.max_x = xi_grid[i];
    }
  }
  e.max_rel = e.max_abs;
  e.l2 = std::sqrt(sum / static_cast<double>(res.size()));
  ResidualReport rep;
  rep.kind = "aux";
  rep.n_samples = xi_grid.size();
  rep.equations.push_back(e);
  return rep;
}

double derivative_crosscheck(const std::function<ValueAndSlope(double)>& fn,
                             std::span<const double> xi_grid, double h) {
  if (!(h > 0.0)) throw InvalidInput("derivative_crosscheck: h must be positive");
  double worst = 0.0, scale = 0.0;
  for (double xi : xi_grid) {
    const double fd = (fn(xi - 2.0 * h).value - 8.0 * fn(xi - h).value + 8.0 * fn(xi + h).value -
                       fn(xi + 2.0 * h).value) /
                      (12.0 * h);
    const double an = fn(xi).slope;
    worst = std::max(worst, std::abs(fd - an));
    scale = std::max(scale, std::abs(an));
  }
  return scale > 0.0 ? worst / scale : worst;
}

DiscriminantDiagnostic discriminant_diagnostic(const ExpansionCoeffs& e) {
  return {discriminant(e.lambda, e.mu), e.k / 2.0 - 2.0 * e.beta_model,
          e.k * e.k / 2.0 - 2.0 * e.beta_model};
}

std::string to_text(const ResidualReport& r) {
  std::ostringstream os;
  os << std::setprecision(6);
  os << r.kind << " residual report: " << r.n_samples << " samples, " << r.n_excluded
     << " excluded (pole radius " << r.exclusion_radius << ")\n";
  if (r.truncation_scale) os << "  finite-difference truncation scale h^4 = " << *r.truncation_scale << "\n";
  for (const auto& e : r.equations) {
    os << "  " << std::left << std::setw(9) << e.name << " max|r| = " << e.max_abs << " at "
       << (r.kind == "pde" ? "x = " : "xi = ") << e.max_x;
    if (e.max_t) os << ", t = " << *e.max_t;
    os << "; L2 = " << e.l2 << "; max rel = " << e.max_rel << "\n";
  }
  return os.str();
}

std::string to_key_value(const ResidualReport& r, std::string_view prefix) {
  std::ostringstream os;
  os << std::setprecision(17);
  const std::string p(prefix);
  os << p << ".kind=" << r.kind << "\n";
  os << p << ".n_samples=" << r.n_samples << "\n";
  os << p << ".n_excluded=" << r.n_excluded << "\n";
  os << p << ".exclusion_radius=" << r.exclusion_radius << "\n";
  if (r.truncation_scale) os << p << ".truncation_scale=" << *r.truncation_scale << "\n";
  for (const auto& e : r.equations) {
    const std::string q = p + "." + e.name;
    os << q << ".max_abs=" << e.max_abs << "\n";
    os << q << ".max_x=" << e.max_x << "\n";
    if (e.max_t) os << q << ".max_t=" << *e.max_t << "\n";
    os << q << ".l2=" << e.l2 << "\n";
    os << q << ".max_rel=" << e.max_rel << "\n";
  }
  return os.str();
}

}  // namespace ppwave
