#include "ppwave/exact_waves.hpp"

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>

#include "ppwave/errors.hpp"

namespace ppwave {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
// Above this |theta| the hyperbolic ratio switches to its tanh form.
constexpr double kTanhSwitch = 20.0;

double branch_sign(Branch b) { return b == Branch::Upper ? 1.0 : -1.0; }

void require_finite(std::initializer_list<double> values, const char* what) {
  for (double x : values) {
    if (!std::isfinite(x)) throw InvalidInput(std::string(what) + ": non-finite input");
  }
}

double half_rate(const GFunction& g) {
  const double d = discriminant(g.lambda, g.mu);
  return 0.5 * std::sqrt(std::abs(d));
}

double constants_scale(const GFunction& g) { return std::abs(g.c1) + std::abs(g.c2); }

}  // namespace

std::string_view to_string(Family f) { return f == Family::SetA ? "A" : "B"; }
std::string_view to_string(Branch b) { return b == Branch::Upper ? "upper" : "lower"; }

Family parse_family(std::string_view text) {
  if (text == "A" || text == "a" || text == "set_a" || text == "SetA") return Family::SetA;
  if (text == "B" || text == "b" || text == "set_b" || text == "SetB") return Family::SetB;
  throw InvalidInput("unknown family '" + std::string(text) + "' (expected A or B)");
}

Branch parse_branch(std::string_view text) {
  if (text == "upper" || text == "+" || text == "plus") return Branch::Upper;
  if (text == "lower" || text == "-" || text == "minus") return Branch::Lower;
  throw InvalidInput("unknown branch '" + std::string(text) + "' (expected upper or lower)");
}

ExpansionCoeffs derive_set_a(double alpha0, double mu, double k, double delta, Branch branch) {
  require_finite({alpha0, mu, k, delta}, "derive_set_a");
  if (delta <= 0.0) throw InvalidInput("derive_set_a: delta must be positive");
  const double s = branch_sign(branch);
  ExpansionCoeffs e;
  e.alpha1 = s * kSqrt2;
  e.alpha0 = alpha0;
  e.beta1 = e.alpha1 / std::sqrt(delta);
  e.beta0 = alpha0 / std::sqrt(delta);
  e.lambda = -s * (k - 2.0 * alpha0) / kSqrt2;
  e.mu = mu;
  e.c = -s * k / kSqrt2;
  e.beta_model = k * alpha0 - alpha0 * alpha0 + 2.0 * mu;
  e.k = k;
  e.delta = delta;
  return e;
}

ExpansionCoeffs derive_set_b(double alpha0, double mu, double k, double delta, Branch branch) {
  require_finite({alpha0, mu, k, delta}, "derive_set_b");
  if (delta <= 0.0) throw InvalidInput("derive_set_b: delta must be positive");
  if (alpha0 == 0.0) throw SingularParameter("derive_set_b: alpha0 = 0 is singular for Set B");
  const double s = branch_sign(branch);
  const double a2 = alpha0 * alpha0;
  ExpansionCoeffs e;
  e.alpha1 = s * kSqrt2;
  e.alpha0 = alpha0;
  // beta1 = alpha1/sqrt(delta) keeps v = u/sqrt(delta) to the last bit, and the split
  // form of lambda is exact at alpha0 = sqrt(2 mu) for square mu (the extinction state).
  e.beta1 = e.alpha1 / std::sqrt(delta);
  e.beta0 = alpha0 / std::sqrt(delta);
  e.lambda = s * (alpha0 / kSqrt2 + kSqrt2 * mu / alpha0);
  e.mu = mu;
  e.c = s * (2.0 * k - 3.0 * alpha0 + 6.0 * mu / alpha0) / kSqrt2;
  e.beta_model = -(a2 - 2.0 * mu) * (-k * alpha0 + a2 - 2.0 * mu) / a2;
  e.k = k;
  e.delta = delta;
  return e;
}

ExpansionCoeffs set_a_special_alpha0(double mu, double k, double delta, Branch branch) {
  if (!(mu >= 0.0)) throw InvalidInput("set_a_special_alpha0: needs mu >= 0");
  return derive_set_a(-(2.0 * std::sqrt(2.0 * mu) + k) / 2.0, mu, k, delta, branch);
}

ExpansionCoeffs set_b_special_alpha0(double mu, double k, double delta, Branch branch) {
  if (!(mu >= 0.0)) throw InvalidInput("set_b_special_alpha0: needs mu > 0");
  return derive_set_b(std::sqrt(2.0 * mu), mu, k, delta, branch);
}

GFunction make_g_function(CaseKind kind, double lambda, double mu, double c1, double c2,
                          double eps_disc) {
  require_finite({lambda, mu, c1, c2}, "G function");
  if (c1 == 0.0 && c2 == 0.0) throw InvalidInput("integration constants (c1, c2) must not both be 0");
  const CaseKind actual = classify_case(lambda, mu, eps_disc);
  if (actual != kind) {
    std::ostringstream os;
    os << "case " << to_string(kind) << " does not match lambda^2 - 4 mu = "
       << discriminant(lambda, mu) << " (" << to_string(actual) << ")";
    throw CaseMismatch(os.str(), discriminant(lambda, mu));
  }
  return {kind, lambda, mu, c1, c2};
}

GValue eval_G(const GFunction& g, double xi) {
  const double a = -0.5 * g.lambda;
  double h = 0.0, dh = 0.0, d2h = 0.0;
  switch (g.kind) {
    case CaseKind::Hyperbolic: {
      const double s = half_rate(g);
      const double sh = std::sinh(s * xi), ch = std::cosh(s * xi);
      h = g.c1 * sh + g.c2 * ch;
      dh = s * (g.c1 * ch + g.c2 * sh);
      d2h = s * s * h;
      break;
    }
    case CaseKind::Trigonometric: {
      const double w = half_rate(g);
      const double sn = std::sin(w * xi), cs = std::cos(w * xi);
      h = g.c1 * cs + g.c2 * sn;
      dh = w * (-g.c1 * sn + g.c2 * cs);
      d2h = -w * w * h;
      break;
    }
    case CaseKind::Degenerate:
      h = g.c1 + g.c2 * xi;
      dh = g.c2;
      d2h = 0.0;
      break;
  }
  const double e = std::exp(a * xi);
  return {e * h, e * (a * h + dh), e * (a * a * h + 2.0 * a * dh + d2h)};
}

GValue eval_G(CaseKind kind, double lambda, double mu, double c1, double c2, double xi) {
  return eval_G(make_g_function(kind, lambda, mu, c1, c2), xi);
}

double scaled_denominator(const GFunction& g, double xi) {
  switch (g.kind) {
    case CaseKind::Hyperbolic:
      return g.c1 * std::tanh(half_rate(g) * xi) + g.c2;
    case CaseKind::Trigonometric: {
      const double w = half_rate(g);
      return g.c1 * std::cos(w * xi) + g.c2 * std::sin(w * xi);
    }
    case CaseKind::Degenerate:
      return g.c1 + g.c2 * xi;
  }
  return 0.0;
}

std::optional<double> nearest_pole(const GFunction& g, double xi) {
  switch (g.kind) {
    case CaseKind::Hyperbolic: {
      if (g.c1 == 0.0) return std::nullopt;
      const double r = -g.c2 / g.c1;
      if (!(std::abs(r) < 1.0)) return std::nullopt;
      return std::atanh(r) / half_rate(g);
    }
    case CaseKind::Trigonometric: {
      // c1 cos + c2 sin = R cos(theta - psi): zeros at theta = psi + pi/2 + n pi.
      const double w = half_rate(g);
      const double psi = std::atan2(g.c2, g.c1);
      const double n = std::round((w * xi - psi - 0.5 * std::numbers::pi) / std::numbers::pi);
      return (psi + 0.5 * std::numbers::pi + n * std::numbers::pi) / w;
    }
    case CaseKind::Degenerate:
      if (g.c2 == 0.0) return std::nullopt;
      return -g.c1 / g.c2;
  }
  return std::nullopt;
}

PhiValue eval_phi_with_derivative(const GFunction& g, double xi) {
  const double floor = kPoleFloor * constants_scale(g);
  auto pole = [&](double d) {
    if (std::abs(d) < floor || !std::isfinite(d)) {
      const double p = nearest_pole(g, xi).value_or(xi);
      std::ostringstream os;
      os << "G'/G evaluated at xi = " << xi << " too close to the pole at xi = " << p;
      throw PoleError(os.str(), xi, p);
    }
  };
  const double half_lambda = 0.5 * g.lambda;
  switch (g.kind) {
    case CaseKind::Hyperbolic: {
      const double s = half_rate(g);
      const double theta = s * xi;
      const double th = std::tanh(theta);
      const double d = g.c1 * th + g.c2;  // denominator / cosh(theta)
      pole(d);
      double ratio;
      if (std::abs(theta) <= kTanhSwitch) {
        const double sh = std::sinh(theta), ch = std::cosh(theta);
        ratio = (g.c1 * ch + g.c2 * sh) / (g.c1 * sh + g.c2 * ch);
      } else {
        ratio = (g.c1 + g.c2 * th) / d;
      }
      const double ch = std::cosh(theta);
      const double dphi = s * s * (g.c2 * g.c2 - g.c1 * g.c1) / (d * d * ch * ch);
      return {-half_lambda + s * ratio, std::isfinite(dphi) ? dphi : 0.0};
    }
    case CaseKind::Trigonometric: {
      const double w = half_rate(g);
      const double sn = std::sin(w * xi), cs = std::cos(w * xi);
      const double d = g.c1 * cs + g.c2 * sn;
      pole(d);
      const double n = -g.c1 * sn + g.c2 * cs;
      return {-half_lambda + w * n / d, -w * w * (g.c1 * g.c1 + g.c2 * g.c2) / (d * d)};
    }
    case CaseKind::Degenerate: {
      const double d = g.c1 + g.c2 * xi;
      pole(d);
      return {g.c2 / d - half_lambda, -g.c2 * g.c2 / (d * d)};
    }
  }
  return {};
}

double eval_phi(const GFunction& g, double xi) { return eval_phi_with_derivative(g, xi).phi; }

double eval_phi(CaseKind kind, double lambda, double mu, double c1, double c2, double xi) {
  return eval_phi(make_g_function(kind, lambda, mu, c1, c2), xi);
}

SolutionSpec make_solution(Family family, Branch branch, double alpha0, double mu, double k,
                           double delta, double c1, double c2, double eps_disc) {
  SolutionSpec spec;
  spec.family = family;
  spec.branch = branch;
  spec.c1 = c1;
  spec.c2 = c2;
  spec.coeffs = family == Family::SetA ? derive_set_a(alpha0, mu, k, delta, branch)
                                       : derive_set_b(alpha0, mu, k, delta, branch);
  spec.kind = classify_case(spec.coeffs.lambda, spec.coeffs.mu, eps_disc);
  validate(spec, eps_disc);
  return spec;
}

SolutionSpec make_solution(Family family, Branch branch, CaseKind expected, double alpha0,
                           double mu, double k, double delta, double c1, double c2,
                           double eps_disc) {
  SolutionSpec spec = make_solution(family, branch, alpha0, mu, k, delta, c1, c2, eps_disc);
  if (spec.kind != expected) {
    const double d = discriminant(spec.coeffs.lambda, spec.coeffs.mu);
    std::ostringstream os;
    os << "requested case " << to_string(expected) << " but lambda^2 - 4 mu = " << d << " ("
       << to_string(spec.kind) << ")";
    throw CaseMismatch(os.str(), d);
  }
  return spec;
}

void validate(const SolutionSpec& spec, double eps_disc) {
  const ExpansionCoeffs& e = spec.coeffs;
  require_finite({e.alpha1, e.alpha0, e.beta1, e.beta0, e.lambda, e.mu, e.c, e.beta_model, e.k,
                  e.delta},
                 "solution coefficients");
  if (e.delta <= 0.0) throw InvalidInput("solution coefficients: delta must be positive");
  make_g_function(spec.kind, e.lambda, e.mu, spec.c1, spec.c2, eps_disc);
}

FieldValue eval_uv_xi(const SolutionSpec& spec, double xi) {
  const double phi = eval_phi(spec.aux(), xi);
  return {spec.coeffs.alpha1 * phi + spec.coeffs.alpha0, spec.coeffs.beta1 * phi + spec.coeffs.beta0};
}

FieldValue eval_uv(const SolutionSpec& spec, double x, double t) {
  return eval_uv_xi(spec, wave_coordinate(spec, x, t));
}

std::vector<double> find_singularities(const GFunction& g, double xi_lo, double xi_hi) {
  if (!(xi_lo < xi_hi)) throw InvalidInput("find_singularities: need xi_lo < xi_hi");
  std::vector<double> seeds;
  switch (g.kind) {
    case CaseKind::Hyperbolic:
    case CaseKind::Degenerate:
      if (auto p = nearest_pole(g, 0.5 * (xi_lo + xi_hi))) seeds.push_back(*p);
      break;
    case CaseKind::Trigonometric: {
      const double w = half_rate(g);
      const double psi = std::atan2(g.c2, g.c1);
      const double offset = psi + 0.5 * std::numbers::pi;
      const auto n_lo = static_cast<std::int64_t>(std::floor((w * xi_lo - offset) / std::numbers::pi)) - 1;
      const auto n_hi = static_cast<std::int64_t>(std::ceil((w * xi_hi - offset) / std::numbers::pi)) + 1;
      seeds.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
      for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        seeds.push_back((offset + static_cast<double>(n) * std::numbers::pi) / w);
      }
      break;
    }
  }

  const double scale = constants_scale(g);
  auto f = [&](double xi) { return scaled_denominator(g, xi); };
  std::vector<double> roots;
  for (double seed : seeds) {
    // Widen a bracket around the analytic seed until the denominator changes sign.
    double half = 1e-9 * std::max(1.0, std::abs(seed));
    double a = seed - half, b = seed + half;
    double fa = f(a), fb = f(b);
    for (int i = 0; i < 60 && fa * fb > 0.0; ++i) {
      half *= 2.0;
      a = seed - half;
      b = seed + half;
      fa = f(a);
      fb = f(b);
    }
    double root = seed;
    if (fa == 0.0) {
      root = a;
    } else if (fb == 0.0) {
      root = b;
    } else if (fa * fb < 0.0) {
      std::uintmax_t iters = 100;
      const auto br = boost::math::tools::toms748_solve(
          f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52), iters);
      root = std::abs(f(br.first)) <= std::abs(f(br.second)) ? br.first : br.second;
    }
    if (std::abs(f(root)) >= 1e-12 * scale) continue;
    if (root >= xi_lo && root <= xi_hi) roots.push_back(root);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

double period_case2(double lambda, double mu) {
  const double d = 4.0 * mu - lambda * lambda;
  if (!(d > 0.0)) throw InvalidInput("period_case2: needs 4 mu - lambda^2 > 0");
  return 2.0 * std::numbers::pi / std::sqrt(d);
}

}  // namespace ppwave
