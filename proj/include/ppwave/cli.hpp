#pragma once

// Subcommand implementations behind the `ppwave` executable. Each command takes a
// plain argument struct so it can be driven from tests without a process boundary.

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include "ppwave/exact_waves.hpp"
#include "ppwave/io.hpp"

namespace ppwave::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kNumerical = 3 };

struct SpecArgs {
  std::string family{"A"};
  std::string branch{"upper"};
  std::string case_name;  ///< empty: take whatever the discriminant gives
  double alpha0{1.2};
  double mu{0.2};
  double k{5.9};
  double delta{3.0};
  double c1{20.0};
  double c2{10.0};

  void append_header(io::Header& h) const;
};

/// Throws CaseMismatch (carrying the discriminant) when case_name disagrees with the
/// derived coefficients.
SolutionSpec build_spec(const SpecArgs& a, double eps_disc);

struct EvalArgs {
  SpecArgs spec;
  double x_min{-5.0};
  double x_max{5.0};
  double t{0.0};
  std::size_t n{1001};
  double tol{kDefaultDiscTol};
  std::string out{"."};
};

struct FigureArgs {
  int number{1};
  std::string out{"."};
};

struct VerifyArgs {
  SpecArgs spec;
  double xi_min{-10.0};
  double xi_max{10.0};
  std::size_t samples{2001};
  bool pde{false};
  double x_min{1.0};
  double x_max{5.0};
  double t_min{0.0};
  double t_max{0.2};
  std::size_t nx{401};
  std::size_t nt{101};
  double tol{1e-8};       ///< ODE threshold
  double pde_tol{1e-5};   ///< PDE threshold
  double c_shift{0.0};    ///< added to the wave speed after derivation
  double beta_shift{0.0}; ///< added to the implied beta after derivation
  std::string out{"."};
};

struct SimulateArgs {
  SpecArgs spec{"A", "upper", "hyperbolic", 1.2, 0.2, 5.9, 3.0, 10.0, 20.0};
  std::string seed{"exact"};  ///< exact | extinction
  std::string bc{"neumann"};  ///< neumann | periodic
  double x_min{-40.0};
  double x_max{40.0};
  double dx{0.05};
  double dt{1e-3};
  double t_end{2.0};
  std::size_t snapshot_every{250};
  double safety{0.8};
  bool measure_speed{true};
  std::optional<double> level;
  double interior{30.0};  ///< half-width of the error window around x = 0
  double tol{0.02};       ///< relative speed tolerance
  std::string out{"."};
};

struct SolveArgs {
  double k{5.9};
  double delta{3.0};
  double mu{0.2};
  double alpha0{1.2};
  double tol{1e-10};
  std::string out{"."};
};

int cmd_eval(const EvalArgs& a, std::ostream& log);
int cmd_figure(const FigureArgs& a, std::ostream& log);
int cmd_verify(const VerifyArgs& a, std::ostream& log);
int cmd_simulate(const SimulateArgs& a, std::ostream& log);
int cmd_solve(const SolveArgs& a, std::ostream& log);

/// Runs `fn` and maps library exceptions onto the exit-code contract.
int run_guarded(const std::function<int()>& fn, std::ostream& err);

/// Entry point of the executable; `argv` as given to main.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace ppwave::cli
