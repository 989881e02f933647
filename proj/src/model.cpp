#include "ppwave/model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ppwave/errors.hpp"

namespace ppwave {

ValidationReport validate_model_params(double k, double delta, double m, double beta, double tol) {
  if (!std::isfinite(k) || !std::isfinite(delta) || !std::isfinite(m) || !std::isfinite(beta)) {
    throw InvalidInput("model parameters must be finite");
  }
  if (!std::isfinite(tol) || tol < 0.0) {
    throw InvalidInput("validation tolerance must be finite and non-negative");
  }
  ValidationReport r;
  r.k_positive = k > 0.0;
  r.delta_positive = delta > 0.0;
  r.m_positive = m > 0.0;
  r.beta_positive = beta > 0.0;
  r.tol = tol;
  r.mortality_gap = std::abs(m - beta);
  // 1/sqrt(delta) is undefined for delta <= 0; the gap is then reported as +inf.
  r.closure_gap = r.delta_positive ? std::abs(k + 1.0 / std::sqrt(delta) - (beta + 1.0))
                                   : std::numeric_limits<double>::infinity();
  r.model_consistent = r.all_positive() && r.closure_gap < tol && r.mortality_gap < tol;
  // Exact zero gaps are consistent even at tol = 0.
  if (r.all_positive() && tol == 0.0) {
    r.model_consistent = r.closure_gap == 0.0 && r.mortality_gap == 0.0;
  }
  return r;
}

std::string_view to_string(CaseKind kind) {
  switch (kind) {
    case CaseKind::Hyperbolic:
      return "hyperbolic";
    case CaseKind::Trigonometric:
      return "trigonometric";
    case CaseKind::Degenerate:
      return "degenerate";
  }
  return "unknown";
}

CaseKind parse_case_kind(std::string_view text) {
  if (text == "hyperbolic" || text == "1") return CaseKind::Hyperbolic;
  if (text == "trigonometric" || text == "2") return CaseKind::Trigonometric;
  if (text == "degenerate" || text == "3") return CaseKind::Degenerate;
  throw InvalidInput("unknown case '" + std::string(text) + "'");
}

CaseKind classify_case(double lambda, double mu, double eps_disc) {
  const double d = discriminant(lambda, mu);
  if (std::abs(d) <= eps_disc) return CaseKind::Degenerate;
  return d > 0.0 ? CaseKind::Hyperbolic : CaseKind::Trigonometric;
}

}  // namespace ppwave
