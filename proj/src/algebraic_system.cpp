#include "ppwave/algebraic_system.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unsupported/Eigen/LevenbergMarquardt>

#include "ppwave/errors.hpp"

namespace ppwave {

double CoeffResiduals::max_abs() const {
  double m = 0.0;
  for (double x : r) m = std::max(m, std::abs(x));
  return m;
}

double CoeffResiduals::norm() const {
  double s = 0.0;
  for (double x : r) s += x * x;
  return std::sqrt(s);
}

CoeffResiduals coeff_residuals(const ExpansionCoeffs& e) {
  const double a1 = e.alpha1, a0 = e.alpha0, b1 = e.beta1, b0 = e.beta0;
  const double lam = e.lambda, mu = e.mu, c = e.c, beta = e.beta_model, k = e.k, d = e.delta;
  // Quadratic prey coefficient of the reduced system.
  const double kq = k + 1.0 / std::sqrt(d);
  CoeffResiduals out;
  auto& r = out.r;
  r[0] = 2.0 * a1 - a1 * a1 * a1;
  r[1] = 3.0 * a1 * lam - c * a1 + kq * a1 * a1 - 3.0 * a1 * a1 * a0 - a1 * b1;
  r[2] = (2.0 * mu + lam * lam) * a1 - c * lam * a1 - beta * a1 + 2.0 * kq * a0 * a1 -
         3.0 * a0 * a0 * a1 - a1 * b0 - a0 * b1;
  r[3] = mu * a1 * lam - c * mu * a1 - beta * a0 + kq * a0 * a0 - a0 * a0 * a0 - a0 * b0;
  r[4] = 2.0 * b1 - d * b1 * b1 * b1;
  r[5] = 3.0 * b1 * lam - c * b1 + k * a1 * b1 - 3.0 * d * b1 * b1 * b0;
  r[6] = (2.0 * mu + lam * lam) * b1 - c * lam * b1 - beta * b1 + k * a0 * b1 + k * a1 * b0 -
         3.0 * d * b0 * b0 * b1;
  r[7] = mu * b1 * lam - c * mu * b1 - beta * b0 + k * a0 * b0 - d * b0 * b0 * b0;
  return out;
}

Unknowns pack_unknowns(const ExpansionCoeffs& e) {
  return {e.alpha1, e.beta1, e.beta0, e.lambda, e.c, e.beta_model};
}

ExpansionCoeffs unpack_unknowns(const Unknowns& x, double k, double delta, double mu,
                                double alpha0) {
  ExpansionCoeffs e;
  e.alpha1 = x[0];
  e.beta1 = x[1];
  e.beta0 = x[2];
  e.lambda = x[3];
  e.c = x[4];
  e.beta_model = x[5];
  e.alpha0 = alpha0;
  e.mu = mu;
  e.k = k;
  e.delta = delta;
  return e;
}

std::array<std::array<double, kNumUnknowns>, 8> coeff_jacobian(const ExpansionCoeffs& e) {
  const double a1 = e.alpha1, a0 = e.alpha0, b1 = e.beta1, b0 = e.beta0;
  const double lam = e.lambda, mu = e.mu, c = e.c, beta = e.beta_model, k = e.k, d = e.delta;
  const double kq = k + 1.0 / std::sqrt(d);
  enum { A1, B1, B0, LAM, C, BETA };
  std::array<std::array<double, kNumUnknowns>, 8> j{};

  j[0][A1] = 2.0 - 3.0 * a1 * a1;

  j[1][A1] = 3.0 * lam - c + 2.0 * kq * a1 - 6.0 * a1 * a0 - b1;
  j[1][B1] = -a1;
  j[1][LAM] = 3.0 * a1;
  j[1][C] = -a1;

  j[2][A1] = 2.0 * mu + lam * lam - c * lam - beta + 2.0 * kq * a0 - 3.0 * a0 * a0 - b0;
  j[2][B1] = -a0;
  j[2][B0] = -a1;
  j[2][LAM] = 2.0 * lam * a1 - c * a1;
  j[2][C] = -lam * a1;
  j[2][BETA] = -a1;

  j[3][A1] = mu * lam - c * mu;
  j[3][B0] = -a0;
  j[3][LAM] = mu * a1;
  j[3][C] = -mu * a1;
  j[3][BETA] = -a0;

  j[4][B1] = 2.0 - 3.0 * d * b1 * b1;

  j[5][A1] = k * b1;
  j[5][B1] = 3.0 * lam - c + k * a1 - 6.0 * d * b1 * b0;
  j[5][B0] = -3.0 * d * b1 * b1;
  j[5][LAM] = 3.0 * b1;
  j[5][C] = -b1;

  j[6][A1] = k * b0;
  j[6][B1] = 2.0 * mu + lam * lam - c * lam - beta + k * a0 - 3.0 * d * b0 * b0;
  j[6][B0] = k * a1 - 6.0 * d * b0 * b1;
  j[6][LAM] = 2.0 * lam * b1 - c * b1;
  j[6][C] = -lam * b1;
  j[6][BETA] = -b1;

  j[7][B1] = mu * lam - c * mu;
  j[7][B0] = -beta + k * a0 - 3.0 * d * b0 * b0;
  j[7][LAM] = mu * b1;
  j[7][C] = -mu * b1;
  j[7][BETA] = -b0;
  return j;
}

namespace {

struct CoeffFunctor : Eigen::DenseFunctor<double> {
  double k, delta, mu, alpha0;

  CoeffFunctor(double k_, double delta_, double mu_, double alpha0_)
      : Eigen::DenseFunctor<double>(static_cast<int>(kNumUnknowns), 8),
        k(k_), delta(delta_), mu(mu_), alpha0(alpha0_) {}

  ExpansionCoeffs coeffs(const InputType& x) const {
    Unknowns u;
    for (std::size_t i = 0; i < kNumUnknowns; ++i) u[i] = x(static_cast<Eigen::Index>(i));
    return unpack_unknowns(u, k, delta, mu, alpha0);
  }

  int operator()(const InputType& x, ValueType& fvec) const {
    const CoeffResiduals r = coeff_residuals(coeffs(x));
    for (int i = 0; i < 8; ++i) fvec(i) = r.r[static_cast<std::size_t>(i)];
    return 0;
  }

  int df(const InputType& x, JacobianType& fjac) const {
    const auto j = coeff_jacobian(coeffs(x));
    for (int i = 0; i < 8; ++i)
      for (int c = 0; c < static_cast<int>(kNumUnknowns); ++c)
        fjac(i, c) = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
    return 0;
  }
};

struct StartOutcome {
  Unknowns x{};
  double residual{std::numeric_limits<double>::infinity()};
};

StartOutcome run_start(const CoeffFunctor& functor, const Unknowns& x0, const SolveOptions& opts) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(kNumUnknowns));
  for (std::size_t i = 0; i < kNumUnknowns; ++i) x(static_cast<Eigen::Index>(i)) = x0[i];

  CoeffFunctor f = functor;
  Eigen::LevenbergMarquardt<CoeffFunctor> lm(f);
  lm.setMaxfev(opts.max_function_evals);
  lm.setXtol(1e-15);
  lm.setFtol(1e-15);
  lm.minimize(x);

  // Gauss-Newton polish: converged roots are zero-residual, so this is quadratic.
  Eigen::VectorXd fvec(8);
  Eigen::MatrixXd jac(8, static_cast<Eigen::Index>(kNumUnknowns));
  for (int it = 0; it < 8 && x.allFinite(); ++it) {
    f(x, fvec);
    f.df(x, jac);
    const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-fvec);
    if (!step.allFinite()) break;
    const Eigen::VectorXd trial = x + step;
    Eigen::VectorXd ftrial(8);
    f(trial, ftrial);
    if (!(ftrial.norm() < fvec.norm())) break;
    x = trial;
  }

  StartOutcome out;
  if (!x.allFinite()) return out;
  f(x, fvec);
  for (std::size_t i = 0; i < kNumUnknowns; ++i) out.x[i] = x(static_cast<Eigen::Index>(i));
  out.residual = fvec.norm();
  return out;
}

}  // namespace

SolveResult solve_families(double k, double delta, double mu, double alpha0, const InitGrid& grid,
                           const SolveOptions& opts) {
  if (!std::isfinite(k) || !std::isfinite(delta) || !std::isfinite(mu) || !std::isfinite(alpha0)) {
    throw InvalidInput("solve_families: non-finite input");
  }
  if (delta <= 0.0) throw InvalidInput("solve_families: delta must be positive");

  const double beta0_seed = alpha0 / std::sqrt(delta);
  std::vector<Unknowns> starts;
  starts.reserve(grid.size());
  for (double a1 : grid.alpha1)
    for (double b1 : grid.beta1)
      for (double lam : grid.lambda)
        for (double c : grid.c)
          for (double beta : grid.beta) starts.push_back({a1, b1, beta0_seed, lam, c, beta});
  if (starts.empty()) throw InvalidInput("solve_families: empty init grid");

  const CoeffFunctor functor(k, delta, mu, alpha0);
  std::vector<StartOutcome> outcomes(starts.size());
  const auto n = static_cast<std::ptrdiff_t>(starts.size());
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    outcomes[static_cast<std::size_t>(i)] =
        run_start(functor, starts[static_cast<std::size_t>(i)], opts);
  }

  SolveResult result;
  result.starts = starts.size();
  result.best_residual = std::numeric_limits<double>::infinity();
  std::vector<StartOutcome> accepted;
  for (const auto& o : outcomes) {
    result.best_residual = std::min(result.best_residual, o.residual);
    if (!(o.residual < opts.accept_residual)) continue;
    ++result.converged_starts;
    // The ansatz needs non-zero slopes in both components.
    if (std::abs(o.x[0]) < opts.min_slope || std::abs(o.x[1]) < opts.min_slope) continue;
    accepted.push_back(o);
  }
  if (accepted.empty()) {
    std::ostringstream os;
    os << "no root of the coefficient system from " << starts.size()
       << " starts; best residual norm " << result.best_residual;
    throw NoConvergence(os.str(), result.best_residual);
  }

  std::sort(accepted.begin(), accepted.end(),
            [](const StartOutcome& a, const StartOutcome& b) { return a.x < b.x; });
  for (const auto& o : accepted) {
    const ExpansionCoeffs e = unpack_unknowns(o.x, k, delta, mu, alpha0);
    bool duplicate = false;
    for (auto& kept : result.roots) {
      if (unknowns_distance(kept.coeffs, e) < opts.dedup_distance) {
        duplicate = true;
        if (o.residual < kept.residual_norm) kept = {e, o.residual};
        break;
      }
    }
    if (!duplicate) result.roots.push_back({e, o.residual});
  }
  for (auto& root : result.roots) root.jacobian_rank = jacobian_rank(root.coeffs);
  return result;
}

std::size_t jacobian_rank(const ExpansionCoeffs& coeffs) {
  const auto jac = coeff_jacobian(coeffs);
  Eigen::Matrix<double, 8, static_cast<int>(kNumUnknowns)> m;
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < static_cast<int>(kNumUnknowns); ++c) m(r, c) = jac[r][c];
  Eigen::ColPivHouseholderQR<decltype(m)> qr(m);
  qr.setThreshold(1e-9);
  return static_cast<std::size_t>(qr.rank());
}

double unknowns_distance(const ExpansionCoeffs& a, const ExpansionCoeffs& b) {
  const Unknowns x = pack_unknowns(a), y = pack_unknowns(b);
  double d = 0.0;
  for (std::size_t i = 0; i < kNumUnknowns; ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

FamilyMatch closest_family(const ExpansionCoeffs& root) {
  FamilyMatch best;
  best.deviation = std::numeric_limits<double>::infinity();
  for (Family fam : {Family::SetA, Family::SetB}) {
    if (fam == Family::SetB && root.alpha0 == 0.0) continue;
    for (Branch br : {Branch::Upper, Branch::Lower}) {
      const ExpansionCoeffs closed =
          fam == Family::SetA ? derive_set_a(root.alpha0, root.mu, root.k, root.delta, br)
                              : derive_set_b(root.alpha0, root.mu, root.k, root.delta, br);
      const double d = unknowns_distance(root, closed);
      if (d < best.deviation) best = {fam, br, d};
    }
  }
  return best;
}

}  // namespace ppwave
