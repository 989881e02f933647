#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "ppwave/exact_waves.hpp"

namespace ppwave {

/**
 * Residuals of the eight coefficient equations obtained by inserting
 * u = alpha1 phi + alpha0, v = beta1 phi + beta0 into the travelling-wave ODEs
 * and collecting powers of phi = G'/G.
 *
 * Order: prey rows for phi^3, phi^2, phi^1, phi^0, then predator rows for the
 * same powers.
 */
struct CoeffResiduals {
  std::array<double, 8> r{};

  double max_abs() const;
  double norm() const;
};

CoeffResiduals coeff_residuals(const ExpansionCoeffs& coeffs);

/// Unknowns of the root finder, in this order.
inline constexpr std::size_t kNumUnknowns = 6;
using Unknowns = std::array<double, kNumUnknowns>;  // alpha1, beta1, beta0, lambda, c, beta

Unknowns pack_unknowns(const ExpansionCoeffs& coeffs);
/// Rebuilds coefficients from the unknowns and the fixed (k, delta, mu, alpha0).
ExpansionCoeffs unpack_unknowns(const Unknowns& x, double k, double delta, double mu, double alpha0);

/// d r_i / d x_j for the unknowns above, analytically.
std::array<std::array<double, kNumUnknowns>, 8> coeff_jacobian(const ExpansionCoeffs& coeffs);

/// Starting points for the multi-start solve. beta0 is always seeded at alpha0/sqrt(delta).
struct InitGrid {
  std::vector<double> alpha1{-1.5, 1.5};
  std::vector<double> beta1{-1.5, 1.5};
  std::vector<double> lambda{-5.0, -1.0, 1.0, 5.0};
  std::vector<double> c{-5.0, -1.0, 1.0, 5.0};
  std::vector<double> beta{0.5, 5.0};

  std::size_t size() const {
    return alpha1.size() * beta1.size() * lambda.size() * c.size() * beta.size();
  }
};

struct SolveOptions {
  double accept_residual{1e-10};  ///< Euclidean norm of the 8 residuals
  double dedup_distance{1e-6};    ///< max-norm over the unknowns
  double min_slope{1e-6};         ///< roots with |alpha1| or |beta1| below this are dropped
  int max_function_evals{2000};
  bool parallel{true};
};

struct FamilyRoot {
  ExpansionCoeffs coeffs;
  double residual_norm{0.0};
  /// Numerical rank of the 8x6 Jacobian at the root. Below 6 the root is not isolated: it
  /// lies on a continuum of roots (e.g. alpha0 = mu = 0 leaves lambda free).
  std::size_t jacobian_rank{kNumUnknowns};
};

struct SolveResult {
  std::vector<FamilyRoot> roots;  ///< sorted lexicographically by the unknowns
  std::size_t starts{0};
  std::size_t converged_starts{0};
  double best_residual{0.0};
};

/// Multi-start Levenberg-Marquardt over (alpha1, beta1, beta0, lambda, c, beta) with
/// (k, delta, mu, alpha0) held fixed. Deterministic for a given grid regardless of
/// threading. Throws NoConvergence when no start reaches the residual threshold.
SolveResult solve_families(double k, double delta, double mu, double alpha0,
                           const InitGrid& grid = {}, const SolveOptions& opts = {});

/// Rank of coeff_jacobian at `coeffs`, relative threshold 1e-9.
std::size_t jacobian_rank(const ExpansionCoeffs& coeffs);

/// Max componentwise distance over the six unknowns.
double unknowns_distance(const ExpansionCoeffs& a, const ExpansionCoeffs& b);

struct FamilyMatch {
  Family family{Family::SetA};
  Branch branch{Branch::Upper};
  double deviation{0.0};
};

/// Closest closed-form family member to `root` (Set B skipped for alpha0 = 0).
FamilyMatch closest_family(const ExpansionCoeffs& root);

}  // namespace ppwave
