// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#pragma once

#include "scpls/problem.hpp"

namespace scpls {

/// Ball form of a quadratic constraint surrogate: |x - center|^2 <= radius_sq.
/// The radius is kept squared throughout; the solvers never take its root.
struct BallConstraint {
  Vector center;
  double radius_sq = 0.0;
  int source_index = 0;
};

/// Constraint data frozen at a feasible base point, together with the
/// curvature modulus used to build the quadratic upper model.
struct Linearization {
  Vector base_point;
  double g_value = 0.0;
  Vector g_grad;
  double modulus = 0.0;
  int source_index = 0;
};

/// Evaluates constraint i at x and freezes the linearization.
/// Rejects infeasible base points: the outer loop only ever linearizes at
/// iterates with g(x) <= 0.
Linearization linearize(const ConstraintFunction& g, const Vector& x, double modulus,
                        int source_index = 0);

/// g(y) + <grad g(y), x - y> + (w/2)|x - y|^2.
double surrogate_value(const Linearization& lin, const Vector& x);

/// Rewrites {x : surrogate <= 0} as a ball. Throws
/// ConstraintQualificationViolated when the radius degenerates to zero,
/// i.e. the base point is active with a vanishing gradient.
BallConstraint to_ball(const Linearization& lin);

}  // namespace scpls
