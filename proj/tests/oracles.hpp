// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#pragma once

#include <functional>

#include "scpls/rng.hpp"
#include "scpls/subproblem.hpp"

// Independent oracles used only by tests. None of these share code with the
// solvers they check.
namespace scpls::testing {

double quad_objective(const QuadBallSubproblem& sp, const Vector& x);
double lin_objective(const LinBallSubproblem& sp, const Vector& x);

// Best feasible objective seen by projected subgradient descent with
// diminishing steps, started at the ball center. Always an upper bound on
// the optimal value.
double psg_quad(const QuadBallSubproblem& sp, int iters);
double psg_lin(const LinBallSubproblem& sp, int iters);

// Exact one-dimensional optima by enumerating the interval endpoints, the
// kink at zero and the interior stationary points of each smooth piece.
double exact_1d_quad(double anchor, double center, double radius_sq, double prox_weight);
double exact_1d_lin(double coeff, double center, double radius_sq);

// Random instances with log-uniform scales and Gaussian centers.
QuadBallSubproblem random_quad(Rng& rng, int n);
LinBallSubproblem random_lin(Rng& rng, int n);

// Central finite differences with step 1e-6 * max(1, |x|).
Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x);

}  // namespace scpls::testing
