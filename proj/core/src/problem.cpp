// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#include "scpls/problem.hpp"

namespace scpls {

SmoothTerm SmoothTerm::zero() {
  SmoothTerm term;
  term.value = [](const Vector&) { return 0.0; };
  term.gradient = [](const Vector& x) { return Vector(Vector::Zero(x.size())); };
  term.lipschitz_grad = 0.0;
  return term;
}

ConvexRegularizer ConvexRegularizer::scaled_norm(double mu) {
  if (mu < 0.0) throw InvalidArgument("scaled_norm: negative scale");
  return {RegularizerKind::scaled_euclidean_norm, mu};
}

Objective eval_F(const DcProblem& problem, const Vector& x, double feasibility_tol) {
  if (x.size() != problem.dimension)
    throw InvalidArgument("eval_F: x has length " + std::to_string(x.size()) +
                          ", problem dimension is " + std::to_string(problem.dimension));

  Objective out;
  out.value = problem.f.value(x) + problem.p1.value(x) - problem.p2.value(x);
  out.g_values.resize(static_cast<Eigen::Index>(problem.constraints.size()));
  for (std::size_t i = 0; i < problem.constraints.size(); ++i)
    out.g_values[static_cast<Eigen::Index>(i)] = problem.constraints[i].value(x);
  out.feasible = out.g_values.size() == 0 || out.g_values.maxCoeff() <= feasibility_tol;
  return out;
}

Vector subgradient_p2(const ConvexRegularizer& p2, const Vector& x) {
  switch (p2.kind) {
    case RegularizerKind::zero:
      return Vector::Zero(x.size());
    case RegularizerKind::scaled_euclidean_norm: {
      const double norm = x.norm();
      if (norm == 0.0) return Vector::Zero(x.size());  // 0 is a valid subgradient at 0
      return (p2.scale / norm) * x;
    }
    case RegularizerKind::ell1:
      throw UnsupportedConfiguration("subgradient_p2: ell1 as the concave part is not supported");
  }
  return Vector::Zero(x.size());
}

}  // namespace scpls
