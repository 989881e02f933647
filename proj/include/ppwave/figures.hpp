#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ppwave/exact_waves.hpp"
#include "ppwave/kernels.hpp"

namespace ppwave {

/// u, v sampled on a uniform x grid at fixed t. Samples within `exclusion_radius`
/// of a pole (or where G'/G cannot be evaluated) are flagged and left as NaN.
struct Profile {
  double t{0.0};
  double exclusion_radius{0.0};
  std::vector<double> x;
  std::vector<double> u;
  std::vector<double> v;
  std::vector<bool> pole_adjacent;
};

/// Exclusion radius defaults to 2 dx.
Profile sample_profile(const SolutionSpec& spec, double x_lo, double x_hi, std::size_t n, double t,
                       double exclusion_radius = -1.0);

/// Centres of the runs of pole-adjacent samples, in x.
std::vector<double> detect_poles(const Profile& p);

/// Period of the profile from the first autocorrelation peak of atan(u), refined by a
/// parabola through the peak. Pole-adjacent samples contribute 0. Returns NaN when no
/// peak is found.
double autocorrelation_period(const Profile& p, kernels::Exec exec = kernels::Exec::OpenMP);

/// Estimate of A in u ~ A / (xi - xi*) from the samples just outside the excluded run
/// around the pole at x_pole. Needs one pole-adjacent run near x_pole.
double pole_residue(const Profile& p, const SolutionSpec& spec, double x_pole);

struct FigureSetup {
  int number{1};
  SolutionSpec spec;
  double t{0.0};
  double x_lo{0.0};
  double x_hi{0.0};
  std::size_t n{0};
  std::vector<std::string> notes;  ///< inferred parameters, written into the output header
};

/// Parameter sets of the three published profiles. Throws InvalidInput for n outside 1..3.
FigureSetup figure_setup(int number);

}  // namespace ppwave
