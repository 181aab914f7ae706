// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <vector>

#include "scpls/errors.hpp"

namespace scpls {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Smooth term of the objective, with an optional gradient modulus.
struct SmoothTerm {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  std::optional<double> lipschitz_grad;

  // The identically-zero term used by the sparse recovery models.
  static SmoothTerm zero();
};

enum class RegularizerKind { ell1, scaled_euclidean_norm, zero };

/// Convex regularizer restricted to the shapes the solver understands:
/// the l1 norm, a scaled Euclidean norm, or nothing.
struct ConvexRegularizer {
  RegularizerKind kind = RegularizerKind::zero;
  double scale = 0.0;  // mu for scaled_euclidean_norm, fixed 1 for ell1

  double value(const Vector& x) const {
    switch (kind) {
      case RegularizerKind::ell1:
        return x.lpNorm<1>();
      case RegularizerKind::scaled_euclidean_norm:
        return scale * x.norm();
      case RegularizerKind::zero:
        return 0.0;
    }
    return 0.0;
  }

  static ConvexRegularizer ell1() { return {RegularizerKind::ell1, 1.0}; }
  static ConvexRegularizer scaled_norm(double mu);
  static ConvexRegularizer none() { return {RegularizerKind::zero, 0.0}; }
};

/// One smooth inequality constraint g_i(x) <= 0.
struct ConstraintFunction {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  std::optional<double> lipschitz_grad;
};

/// The full problem: minimize f + P1 - P2 subject to g(x) <= 0 componentwise.
struct DcProblem {
  SmoothTerm f;
  ConvexRegularizer p1;
  ConvexRegularizer p2;
  std::vector<ConstraintFunction> constraints;
  Eigen::Index dimension = 0;
};

struct Objective {
  double value = 0.0;
  bool feasible = false;
  Vector g_values;
};

/// Objective value, feasibility flag and raw constraint values at x.
/// Infeasibility is reported through the flag, never as an infinite value.
Objective eval_F(const DcProblem& problem, const Vector& x, double feasibility_tol = 0.0);

/// A deterministic element of the subdifferential of P2 at x.
/// For the scaled norm this is mu*x/|x| away from the origin and 0 at it.
Vector subgradient_p2(const ConvexRegularizer& p2, const Vector& x);

}  // namespace scpls
