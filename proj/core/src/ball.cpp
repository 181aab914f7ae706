// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#include "scpls/ball.hpp"

namespace scpls {

Linearization linearize(const ConstraintFunction& g, const Vector& x, double modulus,
                        int source_index) {
  if (modulus <= 0.0) throw InvalidArgument("linearize: modulus must be positive");
  Linearization lin;
  lin.base_point = x;
  lin.g_value = g.value(x);
  if (lin.g_value > 0.0)
    throw InvalidArgument("linearize: base point is infeasible (g = " +
                          std::to_string(lin.g_value) + ")");
  lin.g_grad = g.gradient(x);
  lin.modulus = modulus;
  lin.source_index = source_index;
  return lin;
}

double surrogate_value(const Linearization& lin, const Vector& x) {
  if (x.size() != lin.base_point.size())
    throw InvalidArgument("surrogate_value: dimension mismatch");
  const Vector d = x - lin.base_point;
  return lin.g_value + lin.g_grad.dot(d) + 0.5 * lin.modulus * d.squaredNorm();
}

BallConstraint to_ball(const Linearization& lin) {
  if (lin.modulus <= 0.0) throw InvalidArgument("to_ball: modulus must be positive");
  if (lin.g_value > 0.0) throw InvalidArgument("to_ball: base point is infeasible");

  BallConstraint ball;
  const Vector scaled_grad = lin.g_grad / lin.modulus;
  ball.center = lin.base_point - scaled_grad;
  ball.radius_sq = scaled_grad.squaredNorm() - 2.0 * lin.g_value / lin.modulus;
  ball.source_index = lin.source_index;
  if (ball.radius_sq <= 0.0)
    throw ConstraintQualificationViolated(
        "to_ball: degenerate surrogate ball (active constraint with zero gradient)");
  return ball;
}

}  // namespace scpls
