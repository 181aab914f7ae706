// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#pragma once

#include "scpls/problem.hpp"

namespace scpls {

/// min |x|_1 + (w/2)|x - anchor|^2  s.t.  |x - center|^2 <= radius_sq,
/// where anchor already folds the linearized smooth parts of the objective.
struct QuadBallSubproblem {
  Vector anchor;       // y
  Vector center;       // s
  double radius_sq;    // r > 0
  double prox_weight;  // alpha > 0
};

/// min |x|_1 - <linear_coeff, x>  s.t.  |x - center|^2 <= radius_sq.
struct LinBallSubproblem {
  Vector linear_coeff;  // xi
  Vector center;        // s
  double radius_sq;     // r > 0
};

struct KktResiduals {
  double stationarity = 0.0;
  double complementarity = 0.0;
  double feasibility = 0.0;
};

struct SubproblemSolution {
  Vector x_star;
  double lambda_star = 0.0;
  double kkt_stationarity = 0.0;
  double kkt_complementarity = 0.0;
  double kkt_feasibility = 0.0;
  int bisection_iters = 0;
};

/// Componentwise sign(v) * max(|v| - kappa, 0); the prox of kappa*|.|_1.
Vector soft_threshold(const Vector& v, double kappa);

/// Exact solve via the dual root: test the multiplier-free candidate first,
/// otherwise bisect the monotone residual of the prox path in lambda.
SubproblemSolution solve_quad_ball(const QuadBallSubproblem& sp, double tol = 1e-12);

/// Same scheme for the linearized objective (no proximal quadratic).
SubproblemSolution solve_lin_ball(const LinBallSubproblem& sp, double tol = 1e-12);

/// Stationarity is the max-norm distance of the negated smooth gradient part
/// to the l1 subdifferential at x; complementarity and feasibility are the
/// usual ball quantities.
KktResiduals kkt_residuals(const Vector& x, double lambda, const QuadBallSubproblem& sp);
KktResiduals kkt_residuals(const Vector& x, double lambda, const LinBallSubproblem& sp);

}  // namespace scpls
