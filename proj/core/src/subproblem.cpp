// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#include "scpls/subproblem.hpp"

#include <cmath>

namespace scpls {
namespace {

constexpr int kMaxDoublings = 200;
constexpr int kMaxBisections = 200;

double sgn(double v) { return v > 0.0 ? 1.0 : -1.0; }

// Writes the prox-path point x(lambda) for the quadratic form and returns
// |x - center|^2 - radius_sq. Componentwise the active branch is evaluated as
// (w*(y_j - s_j) - sign) / (w + 2*lambda), which keeps the residual accurate
// when x_j is close to s_j.
double quad_residual(const QuadBallSubproblem& sp, double lambda, Vector& x) {
  const double beta = sp.prox_weight + 2.0 * lambda;
  double dist_sq = 0.0;
  for (Eigen::Index j = 0; j < sp.anchor.size(); ++j) {
    const double u = sp.prox_weight * sp.anchor[j] + 2.0 * lambda * sp.center[j];
    if (std::abs(u) > 1.0) {
      const double sign = sgn(u);
      x[j] = (u - sign) / beta;
      const double d = (sp.prox_weight * (sp.anchor[j] - sp.center[j]) - sign) / beta;
      dist_sq += d * d;
    } else {
      x[j] = 0.0;
      dist_sq += sp.center[j] * sp.center[j];
    }
  }
  return dist_sq - sp.radius_sq;
}

// Same for the linear form; defined for lambda > 0 only.
double lin_residual(const LinBallSubproblem& sp, double lambda, Vector& x) {
  const double two_lambda = 2.0 * lambda;
  double dist_sq = 0.0;
  for (Eigen::Index j = 0; j < sp.center.size(); ++j) {
    const double u = two_lambda * sp.center[j] + sp.linear_coeff[j];
    if (std::abs(u) > 1.0) {
      const double sign = sgn(u);
      x[j] = (u - sign) / two_lambda;
      const double d = (sp.linear_coeff[j] - sign) / two_lambda;
      dist_sq += d * d;
    } else {
      x[j] = 0.0;
      dist_sq += sp.center[j] * sp.center[j];
    }
  }
  return dist_sq - sp.radius_sq;
}

// Safeguarded bisection on a nonincreasing residual with residual(0+) > 0.
// residual(lambda, x) must fill x as a side effect.
template <typename Residual>
double bisect_multiplier(const Residual& residual, double hi_start, double radius_sq,
                         double tol, Vector& x, int& iters) {
  double lo = 0.0;
  double hi = hi_start;
  int doublings = 0;
  double val = residual(hi, x);
  while (val > 0.0) {
    if (++doublings > kMaxDoublings)
      throw NumericalFailure("ball subproblem: no sign change while doubling the multiplier",
                             lo, hi);
    lo = hi;
    hi *= 2.0;
    val = residual(hi, x);
  }

  // Both exit conditions must hold: a small residual keeps the point on the
  // ball to the stated tolerance, and a collapsed bracket pins the multiplier
  // itself, which the trace-level complementarity checks rely on.
  const double val_tol = tol * std::max(1.0, radius_sq);
  double lambda = hi;
  iters = 0;
  while (std::abs(val) > val_tol || hi - lo > 1e-15 * (1.0 + lambda)) {
    if (++iters > kMaxBisections)
      throw NumericalFailure("ball subproblem: bisection exceeded its iteration cap", lo, hi);
    lambda = 0.5 * (lo + hi);
    val = residual(lambda, x);
    if (val > 0.0)
      lo = lambda;
    else
      hi = lambda;
  }
  return lambda;
}

KktResiduals residuals_from_smooth_part(const Vector& x, double lambda, const Vector& smooth_grad,
                                        const Vector& center, double radius_sq) {
  KktResiduals out;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double r = x[j] != 0.0 ? std::abs(smooth_grad[j] + sgn(x[j]))
                                 : std::max(std::abs(smooth_grad[j]) - 1.0, 0.0);
    out.stationarity = std::max(out.stationarity, r);
  }
  const double slack = (x - center).squaredNorm() - radius_sq;
  out.complementarity = std::abs(lambda * slack);
  out.feasibility = std::max(slack, 0.0);
  return out;
}

void check_dims(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) throw InvalidArgument(std::string(what) + ": dimension mismatch");
}

}  // namespace

Vector soft_threshold(const Vector& v, double kappa) {
  if (kappa < 0.0) throw InvalidArgument("soft_threshold: negative threshold");
  return v.unaryExpr([kappa](double t) {
    const double mag = std::abs(t) - kappa;
    return mag > 0.0 ? (t > 0.0 ? mag : -mag) : 0.0;
  });
}

SubproblemSolution solve_quad_ball(const QuadBallSubproblem& sp, double tol) {
  check_dims(sp.anchor.size(), sp.center.size(), "solve_quad_ball");
  if (sp.radius_sq <= 0.0) throw InvalidArgument("solve_quad_ball: radius_sq must be positive");
  if (sp.prox_weight <= 0.0) throw InvalidArgument("solve_quad_ball: prox_weight must be positive");
  if (tol <= 0.0) throw InvalidArgument("solve_quad_ball: tol must be positive");

  SubproblemSolution sol;
  sol.x_star = soft_threshold(sp.anchor, 1.0 / sp.prox_weight);
  sol.lambda_star = 0.0;
  sol.bisection_iters = 0;

  if ((sol.x_star - sp.center).squaredNorm() > sp.radius_sq) {
    const auto residual = [&sp](double lambda, Vector& x) { return quad_residual(sp, lambda, x); };
    sol.lambda_star = bisect_multiplier(residual, std::max(sp.prox_weight, 1.0), sp.radius_sq,
                                        tol, sol.x_star, sol.bisection_iters);
  }

  const KktResiduals res = kkt_residuals(sol.x_star, sol.lambda_star, sp);
  sol.kkt_stationarity = res.stationarity;
  sol.kkt_complementarity = res.complementarity;
  sol.kkt_feasibility = res.feasibility;
  return sol;
}

SubproblemSolution solve_lin_ball(const LinBallSubproblem& sp, double tol) {
  check_dims(sp.linear_coeff.size(), sp.center.size(), "solve_lin_ball");
  if (sp.radius_sq <= 0.0) throw InvalidArgument("solve_lin_ball: radius_sq must be positive");
  if (tol <= 0.0) throw InvalidArgument("solve_lin_ball: tol must be positive");

  SubproblemSolution sol;
  sol.bisection_iters = 0;

  const bool zero_is_unconstrained_min = sp.linear_coeff.lpNorm<Eigen::Infinity>() <= 1.0;
  if (zero_is_unconstrained_min && sp.center.squaredNorm() <= sp.radius_sq) {
    sol.x_star = Vector::Zero(sp.center.size());
    sol.lambda_star = 0.0;
  } else {
    sol.x_star.resize(sp.center.size());
    const auto residual = [&sp](double lambda, Vector& x) { return lin_residual(sp, lambda, x); };
    sol.lambda_star =
        bisect_multiplier(residual, 1.0, sp.radius_sq, tol, sol.x_star, sol.bisection_iters);
  }

  const KktResiduals res = kkt_residuals(sol.x_star, sol.lambda_star, sp);
  sol.kkt_stationarity = res.stationarity;
  sol.kkt_complementarity = res.complementarity;
  sol.kkt_feasibility = res.feasibility;
  return sol;
}

KktResiduals kkt_residuals(const Vector& x, double lambda, const QuadBallSubproblem& sp) {
  if (lambda < 0.0) throw InvalidArgument("kkt_residuals: negative multiplier");
  const Vector smooth_grad =
      sp.prox_weight * (x - sp.anchor) + 2.0 * lambda * (x - sp.center);
  return residuals_from_smooth_part(x, lambda, smooth_grad, sp.center, sp.radius_sq);
}

KktResiduals kkt_residuals(const Vector& x, double lambda, const LinBallSubproblem& sp) {
  if (lambda < 0.0) throw InvalidArgument("kkt_residuals: negative multiplier");
  const Vector smooth_grad = -sp.linear_coeff + 2.0 * lambda * (x - sp.center);
  return residuals_from_smooth_part(x, lambda, smooth_grad, sp.center, sp.radius_sq);
}

}  // namespace scpls
