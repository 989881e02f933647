#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ppwave/exact_waves.hpp"
#include "ppwave/kernels.hpp"

namespace ppwave {

struct EquationResidual {
  std::string name;
  double max_abs{0.0};
  double max_x{0.0};             ///< xi for ODE reports, x for PDE reports
  std::optional<double> max_t;   ///< only for PDE reports
  double l2{0.0};                ///< sqrt(cell volume * sum r^2)
  double max_rel{0.0};           ///< max |r| / max(|u|^3, 1)
};

struct ResidualReport {
  std::string kind;  ///< "ode", "pde" or "aux"
  std::vector<EquationResidual> equations;
  std::size_t n_samples{0};
  std::size_t n_excluded{0};
  double exclusion_radius{0.0};
  std::optional<double> truncation_scale;  ///< h^4 of the finite-difference stencils

  double max_abs() const;
  /// Equation with the largest max_abs.
  const EquationResidual& worst() const;
};

struct ResidualOptions {
  kernels::Exec exec{kernels::Exec::OpenMP};
  /// Defaults to max(10 h, 1e-3) with h the sample spacing.
  std::optional<double> exclusion_radius;
};

/// Residuals of
///   u'' + c u' - beta u + (k + 1/sqrt(delta)) u^2 - u^3 - u v
///   v'' + c v' + k u v - beta v - delta v^3
/// with u', u'', v', v'' taken analytically through phi' = -(mu + lambda phi + phi^2).
/// Samples within the exclusion radius of a pole are skipped and counted.
ResidualReport ode_residual(const SolutionSpec& spec, double xi_lo, double xi_hi,
                            std::size_t n_samples, const ResidualOptions& opts = {});

/// Residuals of the reduced PDE system on an nx-by-nt grid, with u_t and u_xx from
/// fourth-order central differences of eval_uv. Throws PoleInWindow (first contact)
/// when a pole of the travelling frame meets the stencil-extended window.
ResidualReport pde_residual(const SolutionSpec& spec, double x_lo, double x_hi, double t_lo,
                            double t_hi, std::size_t nx, std::size_t nt,
                            const ResidualOptions& opts = {});

/// max |G'' + lambda G' + mu G| / max |G| over the grid.
ResidualReport check_G_ode(const GFunction& g, std::span<const double> xi_grid,
                           kernels::Exec exec = kernels::Exec::OpenMP);

struct ValueAndSlope {
  double value{0.0};
  double slope{0.0};
};

/// Max |D4 f - f'| over the grid divided by max |f'| over the grid, where D4 is the
/// fourth-order central difference with step h. Returns the absolute deviation when
/// the analytic derivative vanishes on the whole grid.
double derivative_crosscheck(const std::function<ValueAndSlope(double)>& fn,
                             std::span<const double> xi_grid, double h);

/// Side-by-side values of lambda^2 - 4 mu and the two closed expressions in k and beta
/// that are sometimes quoted for it.
struct DiscriminantDiagnostic {
  double discriminant{0.0};
  double k_half_minus_2beta{0.0};
  double k_sq_half_minus_2beta{0.0};
};
DiscriminantDiagnostic discriminant_diagnostic(const ExpansionCoeffs& coeffs);

std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

/// Human-readable, one block per equation.
std::string to_text(const ResidualReport& report);
/// Flat key=value lines, each key prefixed with `prefix.`.
std::string to_key_value(const ResidualReport& report, std::string_view prefix);

}  // namespace ppwave
