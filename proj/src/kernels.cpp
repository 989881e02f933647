#include "ppwave/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace ppwave::kernels {

Reaction Reaction::make(double k, double beta, double delta) {
  return {k, beta, delta, k + 1.0 / std::sqrt(delta)};
}

namespace {

// Neighbour values with ghost points: mirrored for zero flux, wrapped for periodic.
inline double left(std::span<const double> a, std::size_t i, Boundary bc) {
  if (i > 0) return a[i - 1];
  return bc == Boundary::Periodic ? a[a.size() - 1] : a[1];
}

inline double right(std::span<const double> a, std::size_t i, Boundary bc) {
  if (i + 1 < a.size()) return a[i + 1];
  return bc == Boundary::Periodic ? a[0] : a[a.size() - 2];
}

inline void rhs_point(const Reaction& r, Boundary bc, double inv_dx2, std::span<const double> u,
                      std::span<const double> v, std::span<double> du, std::span<double> dv,
                      std::size_t i) {
  const double ui = u[i], vi = v[i];
  du[i] = (left(u, i, bc) - 2.0 * ui + right(u, i, bc)) * inv_dx2 + r.prey(ui, vi);
  dv[i] = (left(v, i, bc) - 2.0 * vi + right(v, i, bc)) * inv_dx2 + r.predator(ui, vi);
}

}  // namespace

void rhs_serial(const Reaction& r, Boundary bc, double dx, std::span<const double> u,
                std::span<const double> v, std::span<double> du, std::span<double> dv) {
  assert(u.size() == v.size() && du.size() == u.size() && dv.size() == u.size() && u.size() >= 3);
  const double inv_dx2 = 1.0 / (dx * dx);
  for (std::size_t i = 0; i < u.size(); ++i) rhs_point(r, bc, inv_dx2, u, v, du, dv, i);
}

void rhs_omp(const Reaction& r, Boundary bc, double dx, std::span<const double> u,
             std::span<const double> v, std::span<double> du, std::span<double> dv) {
  assert(u.size() == v.size() && du.size() == u.size() && dv.size() == u.size() && u.size() >= 3);
  const double inv_dx2 = 1.0 / (dx * dx);
  const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    rhs_point(r, bc, inv_dx2, u, v, du, dv, static_cast<std::size_t>(i));
  }
}

void axpy(Exec exec, std::span<const double> base, double h, std::span<const double> k,
          std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(base.size());
#pragma omp parallel for schedule(static) if (exec == Exec::OpenMP)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(i);
    out[j] = base[j] + h * k[j];
  }
}

void rk4_combine(Exec exec, std::span<double> y, double h, std::span<const double> k1,
                 std::span<const double> k2, std::span<const double> k3,
                 std::span<const double> k4) {
  const double w = h / 6.0;
  const auto n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static) if (exec == Exec::OpenMP)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(i);
    y[j] += w * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
}

namespace {

std::vector<double> centred(std::span<const double> x) {
  double mean = 0.0;
  for (double a : x) mean += a;
  mean /= static_cast<double>(x.size());
  std::vector<double> c(x.begin(), x.end());
  for (double& a : c) a -= mean;
  return c;
}

// Each lag is an independent serial sum, so threading over lags leaves results unchanged.
double lag_sum(const std::vector<double>& c, std::size_t lag) {
  double s = 0.0;
  for (std::size_t i = 0; i + lag < c.size(); ++i) s += c[i] * c[i + lag];
  return s;
}

}  // namespace

std::vector<double> autocorrelation_serial(std::span<const double> x, std::size_t max_lag) {
  if (x.empty()) return {};
  const auto c = centred(x);
  max_lag = std::min(max_lag, x.size() - 1);
  std::vector<double> out(max_lag + 1);
  for (std::size_t lag = 0; lag <= max_lag; ++lag) out[lag] = lag_sum(c, lag);
  const double zero = out[0] > 0.0 ? out[0] : 1.0;
  for (double& a : out) a /= zero;
  return out;
}

std::vector<double> autocorrelation_omp(std::span<const double> x, std::size_t max_lag) {
  if (x.empty()) return {};
  const auto c = centred(x);
  max_lag = std::min(max_lag, x.size() - 1);
  std::vector<double> out(max_lag + 1);
  const auto n = static_cast<std::ptrdiff_t>(max_lag + 1);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t lag = 0; lag < n; ++lag) {
    out[static_cast<std::size_t>(lag)] = lag_sum(c, static_cast<std::size_t>(lag));
  }
  const double zero = out[0] > 0.0 ? out[0] : 1.0;
  for (double& a : out) a /= zero;
  return out;
}

std::size_t first_non_finite(std::span<const double> x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) return i;
  }
  return x.size();
}

}  // namespace ppwave::kernels
