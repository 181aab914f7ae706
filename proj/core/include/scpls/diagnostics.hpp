// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "scpls/problem.hpp"

namespace scpls {

/// Residuals of the stationarity system at (x, lambda) with the concave-part
/// subgradient xi selected by the algorithm.
struct StationarityReport {
  double stationarity = 0.0;      // max-norm distance of 0 to the gradient sum
  double complementarity = 0.0;   // max_i |lambda_i g_i(x)|
  double primal_feasibility = 0.0;  // max_i max(g_i(x), 0)
  double dual_feasibility = 0.0;    // max(-min_i lambda_i, 0)
};

/// Least-squares geometric decay fit over the tail of an error sequence.
struct RateFit {
  std::optional<double> Q;  // per-iteration contraction factor, absent if too few points
  double r2 = 0.0;
  std::pair<int, int> window = {0, 0};  // first and last fitted index, inclusive
};

StationarityReport stationarity_residual(const DcProblem& problem, const Vector& x,
                                         const Vector& lambda, const Vector& xi);

/// Fits log e_t = log a + t log Q over the last max(10, 20%) points above
/// 1e-13. Needs at least 5 usable points, otherwise Q is absent and r2 = 0.
RateFit fit_linear_rate(const std::vector<double>& errors);

/// Max gap of the surrogate evaluated at its own base point against the true
/// constraint value, over random points and moduli, scaled by 1 + |g(x)|.
double surrogate_identity_check(const DcProblem& problem, int samples, std::uint64_t seed);

}  // namespace scpls
