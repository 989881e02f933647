#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ppwave/exact_waves.hpp"
#include "ppwave/kernels.hpp"
#include "ppwave/model.hpp"

namespace ppwave {

using kernels::Boundary;
using kernels::Exec;

/// u and v sampled at x_i = x0 + i dx, i = 0..n-1, at time t.
struct GridField {
  double x0{0.0};
  double dx{1.0};
  std::vector<double> u;
  std::vector<double> v;
  double t{0.0};

  std::size_t size() const { return u.size(); }
  double x(std::size_t i) const { return x0 + static_cast<double>(i) * dx; }
};

/// Throws InvalidInput unless u, v have equal length >= 8, dx > 0 and all samples are finite.
void validate(const GridField& field);

/// Integrates u_t = u_xx - beta u + (k + 1/sqrt(delta)) u^2 - u^3 - u v,
///            v_t = v_xx + k u v - beta v - delta v^3   (predator mortality m = beta).
struct SimConfig {
  double k{1.0};
  double delta{1.0};
  double beta{1.0};
  Boundary bc{Boundary::NeumannZeroFlux};
  double dt{1e-3};
  double t_end{1.0};
  std::size_t snapshot_every{0};  ///< steps between snapshots; 0 keeps only first and last
  double safety{0.8};
  Exec exec{Exec::OpenMP};

  /// Throws InvalidInput if p.m != p.beta.
  static SimConfig from_model(const ModelParams& p);
};

/// Largest admissible dt: safety * dx^2 / 2.
inline double max_stable_dt(double dx, double safety) { return safety * dx * dx / 2.0; }

/// Throws StabilityError when cfg.dt exceeds max_stable_dt, InvalidInput for bad fields.
void check_config(const GridField& field, const SimConfig& cfg);

/// One classical RK4 step of size cfg.dt. Throws BlowUp on the first non-finite value.
GridField step(const GridField& field, const SimConfig& cfg);

/// Steps to cfg.t_end (last step shortened to land on it exactly). The first
/// snapshot is the initial field and the last is the field at t_end.
std::vector<GridField> simulate(const GridField& initial, const SimConfig& cfg);

/// Samples an exact solution as initial data. Throws PoleInWindow when G vanishes
/// anywhere on [x0, x0 + (n - 1) dx] at time t.
GridField sample_exact(const SolutionSpec& spec, double x0, double dx, std::size_t n, double t);

enum class Component { U, V };

/// Least-squares slope of the level-crossing position against time. Every snapshot must
/// cross `level` exactly once; otherwise TrackingError names the offending snapshot.
double measure_wave_speed(std::span<const GridField> snapshots, double level, Component component);

/// Level halfway between the two asymptotes of a pole-free hyperbolic u profile.
double front_midpoint_level(const SolutionSpec& spec);

/// max |numeric - exact| over u and v for samples with |x - centre| < half_width.
double interior_max_error(const GridField& numeric, const SolutionSpec& spec, double centre,
                          double half_width);

}  // namespace ppwave
