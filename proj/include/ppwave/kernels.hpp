#pragma once

// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP version; the two are bitwise identical because no kernel reduces
// across threads (reductions are done afterwards, in index order).

#include <cstddef>
#include <span>
#include <vector>

namespace ppwave::kernels {

enum class Exec { Serial, OpenMP };

enum class Boundary { Periodic, NeumannZeroFlux };

/// Coefficients of the reduced reaction terms.
struct Reaction {
  double k{0.0};
  double beta{0.0};
  double delta{1.0};
  double quad{0.0};  ///< k + 1/sqrt(delta), precomputed

  static Reaction make(double k, double beta, double delta);

  double prey(double u, double v) const { return -beta * u + quad * u * u - u * u * u - u * v; }
  double predator(double u, double v) const { return k * u * v - beta * v - delta * v * v * v; }
};

/// du = u_xx + f(u, v), dv = v_xx + g(u, v) with 2nd-order central differences.
void rhs_serial(const Reaction& r, Boundary bc, double dx, std::span<const double> u,
                std::span<const double> v, std::span<double> du, std::span<double> dv);
void rhs_omp(const Reaction& r, Boundary bc, double dx, std::span<const double> u,
             std::span<const double> v, std::span<double> du, std::span<double> dv);

inline void rhs(Exec exec, const Reaction& r, Boundary bc, double dx, std::span<const double> u,
                std::span<const double> v, std::span<double> du, std::span<double> dv) {
  if (exec == Exec::OpenMP) {
    rhs_omp(r, bc, dx, u, v, du, dv);
  } else {
    rhs_serial(r, bc, dx, u, v, du, dv);
  }
}

/// out = base + h * k
void axpy(Exec exec, std::span<const double> base, double h, std::span<const double> k,
          std::span<double> out);

/// y += h/6 (k1 + 2 k2 + 2 k3 + k4)
void rk4_combine(Exec exec, std::span<double> y, double h, std::span<const double> k1,
                 std::span<const double> k2, std::span<const double> k3,
                 std::span<const double> k4);

/// Normalised autocorrelation of the mean-removed signal for lags 0..max_lag.
std::vector<double> autocorrelation_serial(std::span<const double> x, std::size_t max_lag);
std::vector<double> autocorrelation_omp(std::span<const double> x, std::size_t max_lag);

inline std::vector<double> autocorrelation(Exec exec, std::span<const double> x,
                                           std::size_t max_lag) {
  return exec == Exec::OpenMP ? autocorrelation_omp(x, max_lag)
                              : autocorrelation_serial(x, max_lag);
}

/// Index of the first non-finite entry, or x.size().
std::size_t first_non_finite(std::span<const double> x);

}  // namespace ppwave::kernels
