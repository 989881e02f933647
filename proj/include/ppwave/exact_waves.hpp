#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "ppwave/model.hpp"

namespace ppwave {

enum class Family { SetA, SetB };
/// Upper takes the top sign of every +- / -+ stack in a family, Lower the bottom one.
enum class Branch { Upper, Lower };

std::string_view to_string(Family f);
std::string_view to_string(Branch b);
Family parse_family(std::string_view text);
Branch parse_branch(std::string_view text);

/**
 * One full parameterisation of a travelling wave
 *
 *   u(xi) = alpha1 * phi(xi) + alpha0,   v(xi) = beta1 * phi(xi) + beta0,
 *   phi = G'/G,   G'' + lambda G' + mu G = 0,   xi = x - c t.
 *
 * beta_model is the prey mortality implied by the family; k and delta are
 * carried along so the coefficient system can be evaluated from this alone.
 */
struct ExpansionCoeffs {
  double alpha1{0.0};
  double alpha0{0.0};
  double beta1{0.0};
  double beta0{0.0};
  double lambda{0.0};
  double mu{0.0};
  double c{0.0};
  double beta_model{0.0};
  double k{0.0};
  double delta{1.0};
};

/// Set A: c = -+ k/sqrt2, lambda = -+ (k - 2 alpha0)/sqrt2, beta = k alpha0 - alpha0^2 + 2 mu.
ExpansionCoeffs derive_set_a(double alpha0, double mu, double k, double delta, Branch branch);

/// Set B: lambda = +-(alpha0^2 + 2mu)/(sqrt2 alpha0), c = +-(2k - 3 alpha0 + 6 mu/alpha0)/sqrt2,
/// beta = -(alpha0^2 - 2mu)(-k alpha0 + alpha0^2 - 2mu)/alpha0^2.
/// Throws SingularParameter for alpha0 == 0.
ExpansionCoeffs derive_set_b(double alpha0, double mu, double k, double delta, Branch branch);

/// Set A with the printed special choice alpha0 = -(2 sqrt(2 mu) + k)/2 (needs mu >= 0).
ExpansionCoeffs set_a_special_alpha0(double mu, double k, double delta, Branch branch);
/// Set B with alpha0 = sqrt(2 mu) (needs mu > 0); always lands on the degenerate case.
ExpansionCoeffs set_b_special_alpha0(double mu, double k, double delta, Branch branch);

/// The auxiliary function G of G'' + lambda G' + mu G = 0 with integration constants c1, c2.
struct GFunction {
  CaseKind kind{CaseKind::Degenerate};
  double lambda{0.0};
  double mu{0.0};
  double c1{1.0};
  double c2{0.0};
};

/// Checks (c1, c2) != (0, 0) and that `kind` agrees with classify_case(lambda, mu, eps_disc).
GFunction make_g_function(CaseKind kind, double lambda, double mu, double c1, double c2,
                          double eps_disc = kDefaultDiscTol);

struct GValue {
  double g{0.0};
  double dg{0.0};
  double d2g{0.0};
};

/// Closed-form G with analytic G' and G''. May overflow for large |lambda xi|.
GValue eval_G(const GFunction& g, double xi);
GValue eval_G(CaseKind kind, double lambda, double mu, double c1, double c2, double xi);

struct PhiValue {
  double phi{0.0};
  double dphi{0.0};  ///< derivative of the closed ratio, not the Riccati right-hand side
};

/// Pole floor: |denominator| < kPoleFloor * (|c1| + |c2|), denominator free of exp factors.
inline constexpr double kPoleFloor = 1e-6;

/// G'/G from the case-specific closed ratio, so the e^{-lambda xi/2} factors never appear.
/// Throws PoleError near a zero of G.
double eval_phi(const GFunction& g, double xi);
double eval_phi(CaseKind kind, double lambda, double mu, double c1, double c2, double xi);
PhiValue eval_phi_with_derivative(const GFunction& g, double xi);

/// Exp-free denominator of phi scaled to be O(1) everywhere:
/// c1 tanh + c2 (hyperbolic), c1 cos + c2 sin (trigonometric), c1 + c2 xi (degenerate).
double scaled_denominator(const GFunction& g, double xi);

/// Nearest zero of G to xi, if G has any zero at all.
std::optional<double> nearest_pole(const GFunction& g, double xi);

struct SolutionSpec {
  Family family{Family::SetA};
  Branch branch{Branch::Upper};
  CaseKind kind{CaseKind::Hyperbolic};
  double c1{1.0};
  double c2{0.0};
  ExpansionCoeffs coeffs;

  GFunction aux() const { return {kind, coeffs.lambda, coeffs.mu, c1, c2}; }
};

/// Derives the family coefficients, classifies the case and validates the result.
SolutionSpec make_solution(Family family, Branch branch, double alpha0, double mu, double k,
                           double delta, double c1, double c2, double eps_disc = kDefaultDiscTol);

/// Same as make_solution but demands the given case; throws CaseMismatch otherwise.
SolutionSpec make_solution(Family family, Branch branch, CaseKind expected, double alpha0,
                           double mu, double k, double delta, double c1, double c2,
                           double eps_disc = kDefaultDiscTol);

/// Throws InvalidInput / CaseMismatch if the solution breaks its invariants.
void validate(const SolutionSpec& spec, double eps_disc = kDefaultDiscTol);

struct FieldValue {
  double u{0.0};
  double v{0.0};
};

/// Travelling-wave coordinate x - c t.
inline double wave_coordinate(const SolutionSpec& spec, double x, double t) {
  return x - spec.coeffs.c * t;
}

FieldValue eval_uv_xi(const SolutionSpec& spec, double xi);
FieldValue eval_uv(const SolutionSpec& spec, double x, double t);

/// All zeros of G in [xi_lo, xi_hi], ascending, each refined until
/// |scaled_denominator| < 1e-12 (|c1| + |c2|).
std::vector<double> find_singularities(const GFunction& g, double xi_lo, double xi_hi);
inline std::vector<double> find_singularities(const SolutionSpec& spec, double xi_lo,
                                              double xi_hi) {
  return find_singularities(spec.aux(), xi_lo, xi_hi);
}

/// Period 2 pi / sqrt(4 mu - lambda^2) of phi in the trigonometric case.
double period_case2(double lambda, double mu);

}  // namespace ppwave
