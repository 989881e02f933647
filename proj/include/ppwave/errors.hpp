#pragma once

#include <stdexcept>
#include <string>

namespace ppwave {

/// Bad or non-finite input. Maps to the CLI usage/validation exit code.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter sits on a removable singularity of a closed form (e.g. alpha0 = 0 in Set B).
class SingularParameter : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// The requested case does not match the sign of lambda^2 - 4 mu.
class CaseMismatch : public InvalidInput {
 public:
  CaseMismatch(const std::string& what, double disc) : InvalidInput(what), discriminant_(disc) {}
  double discriminant() const { return discriminant_; }

 private:
  double discriminant_;
};

/// Evaluation too close to a zero of G.
class PoleError : public std::domain_error {
 public:
  PoleError(const std::string& what, double xi, double nearest_pole)
      : std::domain_error(what), xi_(xi), nearest_pole_(nearest_pole) {}
  double xi() const { return xi_; }
  double nearest_pole() const { return nearest_pole_; }

 private:
  double xi_;
  double nearest_pole_;
};

/// A pole of the travelling frame enters an (x, t) window.
class PoleInWindow : public InvalidInput {
 public:
  PoleInWindow(const std::string& what, double x, double t) : InvalidInput(what), x_(x), t_(t) {}
  double x() const { return x_; }
  double t() const { return t_; }

 private:
  double x_;
  double t_;
};

/// Base for failures of a numerical process (blow-up, no convergence, lost front).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BlowUp : public NumericalFailure {
 public:
  BlowUp(const std::string& what, double t, double x) : NumericalFailure(what), t_(t), x_(x) {}
  double time() const { return t_; }
  double x() const { return x_; }

 private:
  double t_;
  double x_;
};

class NoConvergence : public NumericalFailure {
 public:
  NoConvergence(const std::string& what, double best_residual)
      : NumericalFailure(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

class TrackingError : public NumericalFailure {
 public:
  TrackingError(const std::string& what, std::size_t snapshot)
      : NumericalFailure(what), snapshot_(snapshot) {}
  std::size_t snapshot() const { return snapshot_; }

 private:
  std::size_t snapshot_;
};

/// dt violates the explicit diffusion bound. Raised before any stepping.
class StabilityError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

}  // namespace ppwave
