#pragma once

#include <string_view>

namespace ppwave {

/// Absolute tie tolerance on lambda^2 - 4 mu used to call a case Degenerate.
inline constexpr double kDefaultDiscTol = 1e-9;

/**
 * Parameters of the diffusive predator-prey system
 *
 *   u_t = u_xx - beta u + (1 + beta) u^2 - u^3 - u v
 *   v_t = v_xx + k u v - m v - delta v^3
 *
 * All four are expected to be positive. The reduced system used throughout
 * this library additionally assumes m = beta and k + 1/sqrt(delta) = beta + 1;
 * validate_model_params() reports how far a parameter set is from that.
 */
struct ModelParams {
  double k{1.0};      ///< predation gain
  double delta{1.0};  ///< cubic closure strength on the predator
  double m{1.0};      ///< predator mortality
  double beta{1.0};   ///< prey mortality
};

struct ValidationReport {
  bool k_positive{false};
  bool delta_positive{false};
  bool m_positive{false};
  bool beta_positive{false};
  double closure_gap{0.0};    ///< |k + 1/sqrt(delta) - (beta + 1)|
  double mortality_gap{0.0};  ///< |m - beta|
  double tol{0.0};
  bool model_consistent{false};

  bool all_positive() const { return k_positive && delta_positive && m_positive && beta_positive; }
};

/// Never throws for finite input; inconsistency is reported, not fatal.
/// Throws InvalidInput on non-finite input or tol < 0.
ValidationReport validate_model_params(double k, double delta, double m, double beta, double tol);
inline ValidationReport validate_model_params(const ModelParams& p, double tol) {
  return validate_model_params(p.k, p.delta, p.m, p.beta, tol);
}

enum class CaseKind { Hyperbolic, Trigonometric, Degenerate };

std::string_view to_string(CaseKind kind);
/// Accepts "hyperbolic"/"trigonometric"/"degenerate" and the short forms 1/2/3.
CaseKind parse_case_kind(std::string_view text);

/// lambda^2 - 4 mu.
inline double discriminant(double lambda, double mu) { return lambda * lambda - 4.0 * mu; }

/// Degenerate iff |lambda^2 - 4 mu| <= eps_disc, otherwise the sign decides.
CaseKind classify_case(double lambda, double mu, double eps_disc = kDefaultDiscTol);

}  // namespace ppwave
