// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#include "scpls/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "scpls/ball.hpp"
#include "scpls/rng.hpp"

namespace scpls {

StationarityReport stationarity_residual(const DcProblem& problem, const Vector& x,
                                         const Vector& lambda, const Vector& xi) {
  if (problem.p1.kind != RegularizerKind::ell1)
    throw UnsupportedConfiguration("stationarity_residual: requires an l1 convex part");
  if (lambda.size() != static_cast<Eigen::Index>(problem.constraints.size()))
    throw InvalidArgument("stationarity_residual: one multiplier per constraint expected");

  StationarityReport report;
  Vector v = problem.f.gradient(x) - xi;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const ConstraintFunction& g = problem.constraints[static_cast<std::size_t>(i)];
    v += lambda[i] * g.gradient(x);
    const double gi = g.value(x);
    report.complementarity = std::max(report.complementarity, std::abs(lambda[i] * gi));
    report.primal_feasibility = std::max(report.primal_feasibility, std::max(gi, 0.0));
    report.dual_feasibility = std::max(report.dual_feasibility, std::max(-lambda[i], 0.0));
  }

  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double w = x[j] != 0.0 ? std::abs(v[j] + (x[j] > 0.0 ? 1.0 : -1.0))
                                 : std::max(std::abs(v[j]) - 1.0, 0.0);
    report.stationarity = std::max(report.stationarity, w);
  }
  return report;
}

RateFit fit_linear_rate(const std::vector<double>& errors) {
  constexpr double kFloor = 1e-13;

  std::vector<std::pair<int, double>> usable;  // (original index, log error)
  for (std::size_t t = 0; t < errors.size(); ++t)
    if (errors[t] > kFloor) usable.emplace_back(static_cast<int>(t), std::log(errors[t]));

  RateFit fit;
  if (usable.size() < 5) return fit;  // Q absent, r2 = 0

  const std::size_t want = std::max<std::size_t>(10, (usable.size() + 4) / 5);
  const std::size_t count = std::min(want, usable.size());
  const std::size_t first = usable.size() - count;
  fit.window = {usable[first].first, usable.back().first};

  double mean_t = 0.0, mean_y = 0.0;
  for (std::size_t k = first; k < usable.size(); ++k) {
    mean_t += usable[k].first;
    mean_y += usable[k].second;
  }
  mean_t /= static_cast<double>(count);
  mean_y /= static_cast<double>(count);

  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t k = first; k < usable.size(); ++k) {
    const double dt = usable[k].first - mean_t;
    const double dy = usable[k].second - mean_y;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }

  const double slope = stt > 0.0 ? sty / stt : 0.0;
  fit.Q = std::exp(slope);
  if (syy <= 0.0) {
    fit.r2 = 1.0;  // zero-variance data is fitted exactly by the constant line
  } else {
    double ss_res = 0.0;
    for (std::size_t k = first; k < usable.size(); ++k) {
      const double pred = mean_y + slope * (usable[k].first - mean_t);
      const double d = usable[k].second - pred;
      ss_res += d * d;
    }
    fit.r2 = 1.0 - ss_res / syy;
  }
  return fit;
}

double surrogate_identity_check(const DcProblem& problem, int samples, std::uint64_t seed) {
  Rng rng(seed);
  double max_gap = 0.0;
  Linearization lin;
  for (int k = 0; k < samples; ++k) {
    Vector x(problem.dimension);
    for (Eigen::Index j = 0; j < x.size(); ++j) x[j] = rng.gaussian();
    const double log_w = -8.0 + 16.0 * rng.uniform01();
    const double w = std::pow(10.0, log_w);

    for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
      const ConstraintFunction& g = problem.constraints[i];
      lin.base_point = x;
      lin.g_value = g.value(x);
      lin.g_grad = g.gradient(x);
      lin.modulus = w;
      const double gap = std::abs(surrogate_value(lin, x) - lin.g_value) /
                         (1.0 + std::abs(lin.g_value));
      max_gap = std::max(max_gap, gap);
    }
  }
  return max_gap;
}

}  // namespace scpls
