#include "ppwave/figures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ppwave/errors.hpp"

namespace ppwave {

Profile sample_profile(const SolutionSpec& spec, double x_lo, double x_hi, std::size_t n, double t,
                       double exclusion_radius) {
  if (n < 2 || !(x_lo < x_hi)) throw InvalidInput("sample_profile: need n >= 2 and x_lo < x_hi");
  validate(spec);
  Profile p;
  p.t = t;
  const double dx = (x_hi - x_lo) / static_cast<double>(n - 1);
  p.exclusion_radius = exclusion_radius >= 0.0 ? exclusion_radius : 2.0 * dx;
  const double xi_lo = wave_coordinate(spec, x_lo, t), xi_hi = wave_coordinate(spec, x_hi, t);
  const double r = p.exclusion_radius;
  const auto poles = find_singularities(spec, std::min(xi_lo, xi_hi) - r, std::max(xi_lo, xi_hi) + r);

  p.x.resize(n);
  p.u.assign(n, std::numeric_limits<double>::quiet_NaN());
  p.v.assign(n, std::numeric_limits<double>::quiet_NaN());
  p.pole_adjacent.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i + 1 == n ? x_hi : x_lo + static_cast<double>(i) * dx;
    p.x[i] = x;
    const double xi = wave_coordinate(spec, x, t);
    bool near = false;
    for (double q : poles) near = near || std::abs(xi - q) < r;
    if (!near) {
      try {
        const FieldValue w = eval_uv_xi(spec, xi);
        p.u[i] = w.u;
        p.v[i] = w.v;
      } catch (const PoleError&) {
        near = true;
      }
    }
    p.pole_adjacent[i] = near;
  }
  return p;
}

std::vector<double> detect_poles(const Profile& p) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < p.x.size()) {
    if (!p.pole_adjacent[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < p.x.size() && p.pole_adjacent[j + 1]) ++j;
    out.push_back(0.5 * (p.x[i] + p.x[j]));
    i = j + 1;
  }
  return out;
}

double autocorrelation_period(const Profile& p, kernels::Exec exec) {
  const std::size_t n = p.x.size();
  if (n < 8) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = p.pole_adjacent[i] ? 0.0 : std::atan(p.u[i]);
  const std::vector<double> acf = kernels::autocorrelation(exec, w, n / 2);

  // Skip the central lobe, then take the first local maximum that reaches half of the tallest
  // peak beyond it. Pole-dominated profiles give a flat, slightly noisy correlation between peaks.
  std::size_t start = 1;
  while (start < acf.size() && acf[start] > 0.0) ++start;
  double tallest = -std::numeric_limits<double>::infinity();
  for (std::size_t l = start; l < acf.size(); ++l) tallest = std::max(tallest, acf[l]);
  std::size_t lag = std::max<std::size_t>(start, 1);
  for (; lag + 1 < acf.size(); ++lag) {
    if (acf[lag] > acf[lag - 1] && acf[lag] >= acf[lag + 1] && acf[lag] >= 0.5 * tallest) break;
  }
  if (lag + 1 >= acf.size()) return std::numeric_limits<double>::quiet_NaN();
  const double ym = acf[lag - 1], y0 = acf[lag], yp = acf[lag + 1];
  const double denom = ym - 2.0 * y0 + yp;
  const double shift = denom != 0.0 ? 0.5 * (ym - yp) / denom : 0.0;
  const double dx = (p.x.back() - p.x.front()) / static_cast<double>(n - 1);
  return (static_cast<double>(lag) + shift) * dx;
}

double pole_residue(const Profile& p, const SolutionSpec& spec, double x_pole) {
  // Walk outwards from the pole to the first evaluated sample on each side.
  std::size_t centre = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    const double d = std::abs(p.x[i] - x_pole);
    if (d < best) {
      best = d;
      centre = i;
    }
  }
  if (p.x.empty() || !p.pole_adjacent[centre]) {
    throw InvalidInput("pole_residue: no excluded run of samples at the given pole");
  }
  std::size_t lo = centre, hi = centre;
  while (lo > 0 && p.pole_adjacent[lo]) --lo;
  while (hi + 1 < p.x.size() && p.pole_adjacent[hi]) ++hi;
  if (p.pole_adjacent[lo] || p.pole_adjacent[hi]) {
    throw InvalidInput("pole_residue: no evaluated samples around the pole");
  }
  // Locate the singularity exactly inside the bracket; the run centre is only grid-accurate.
  const double guess = wave_coordinate(spec, x_pole, p.t);
  double xi_star = guess;
  double gap = std::numeric_limits<double>::infinity();
  for (double s : find_singularities(spec, wave_coordinate(spec, p.x[lo], p.t),
                                     wave_coordinate(spec, p.x[hi], p.t))) {
    if (std::abs(s - guess) < gap) {
      gap = std::abs(s - guess);
      xi_star = s;
    }
  }
  // Remove the regular part alpha0 - alpha1 lambda/2 before scaling by the distance.
  const double regular = spec.coeffs.alpha0 - 0.5 * spec.coeffs.alpha1 * spec.coeffs.lambda;
  auto residue = [&](std::size_t i) {
    return (p.u[i] - regular) * (wave_coordinate(spec, p.x[i], p.t) - xi_star);
  };
  return 0.5 * (residue(lo) + residue(hi));
}

FigureSetup figure_setup(int number) {
  FigureSetup f;
  f.number = number;
  switch (number) {
    case 1:
      // Set A, alpha0 = 1.2, k = 5.9, delta = 3, mu = 0.2, c1 = 20, c2 = 10, t = 0.
      f.spec = make_solution(Family::SetA, Branch::Upper, CaseKind::Hyperbolic, 1.2, 0.2, 5.9, 3.0,
                             20.0, 10.0);
      f.t = 0.0;
      f.x_lo = -5.0;
      f.x_hi = 5.0;
      f.n = 10001;
      f.notes.push_back("family A and the upper branch are inferred: the caption lists alpha0, k, delta, mu, c1, c2 only");
      break;
    case 2:
      f.spec = make_solution(Family::SetA, Branch::Upper, CaseKind::Trigonometric, 3.0, 5.0, 12.2,
                             2.0, 20.0, -10.0);
      f.t = 50.0;
      f.x_lo = -20.0;
      f.x_hi = 20.0;
      f.n = 20001;
      f.notes.push_back("family A and the upper branch are inferred: the caption lists alpha0, k, delta, mu, c1, c2 only");
      break;
    case 3: {
      const double mu = 1.0;
      f.spec = make_solution(Family::SetB, Branch::Upper, CaseKind::Degenerate, std::sqrt(2.0 * mu),
                             mu, 2.03, 3.0, 20.0, 10.0);
      f.t = 10.0;
      const double centre = std::round(f.spec.coeffs.c * f.t);
      f.x_lo = centre - 10.0;
      f.x_hi = centre + 10.0;
      f.n = 4001;
      f.notes.push_back("alpha0 = sqrt(2 mu) is inferred (caption omits alpha0); it is the Set B choice giving lambda = 2 sqrt(mu)");
      f.notes.push_back("family B and the upper branch are inferred");
      break;
    }
    default: {
      std::ostringstream os;
      os << "figure number must be 1, 2 or 3 (got " << number << ")";
      throw InvalidInput(os.str());
    }
  }
  return f;
}

}  // namespace ppwave
