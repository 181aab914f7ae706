// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#include "scpls/cs_models.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <numeric>

#include "scpls/rng.hpp"

namespace scpls {
namespace {

long poisson_draw_small(Rng& rng, double mean) {
  const double limit = std::exp(-mean);
  long k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= rng.uniform01();
  } while (p > limit);
  return k - 1;
}

// Knuth's product-of-uniforms sampler, split so the running product never
// underflows for large means.
long poisson_draw(Rng& rng, double mean) {
  long total = 0;
  while (mean > 30.0) {
    total += poisson_draw_small(rng, 30.0);
    mean -= 30.0;
  }
  return total + poisson_draw_small(rng, mean);
}

double sigmoid(double u) {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

double log1p_exp(double u) {  // log(1 + exp(u)) without overflow
  return std::max(u, 0.0) + std::log1p(std::exp(-std::abs(u)));
}

double raw_constraint_value(const CsInstance& inst, const Vector& x) {
  switch (inst.loss) {
    case Loss::sq_l2:
      return 0.5 * (inst.A * x - inst.b).squaredNorm() - inst.delta;
    case Loss::lorentzian:
      return lorentzian_norm(inst.A * x - inst.b, inst.gamma) - inst.delta;
    case Loss::logistic: {
      const Vector z = inst.A * x;
      double v = 0.0;
      for (Eigen::Index i = 0; i < z.size(); ++i) v += log1p_exp(inst.b[i] * z[i]);
      return v - inst.delta;
    }
    case Loss::poisson: {
      const Vector z = inst.A * x;
      double v = 0.0;
      for (Eigen::Index i = 0; i < z.size(); ++i) v += -inst.b[i] * z[i] + std::exp(z[i]);
      return v - inst.delta;
    }
  }
  return 0.0;
}

void check_shapes(const Matrix& A, const Vector& b) {
  if (A.rows() != b.size()) throw InvalidArgument("constraint builder: A and b shapes disagree");
}

}  // namespace

const char* loss_name(Loss loss) {
  switch (loss) {
    case Loss::sq_l2: return "sq_l2";
    case Loss::lorentzian: return "lorentzian";
    case Loss::logistic: return "logistic";
    case Loss::poisson: return "poisson";
  }
  return "unknown";
}

std::optional<Loss> loss_from_name(const std::string& name) {
  if (name == "sq_l2") return Loss::sq_l2;
  if (name == "lorentzian") return Loss::lorentzian;
  if (name == "logistic") return Loss::logistic;
  if (name == "poisson") return Loss::poisson;
  return std::nullopt;
}

GenerateOptions scaled_options(int i_scale) {
  if (i_scale < 1) throw InvalidArgument("scaled_options: scale must be >= 1");
  GenerateOptions opts;
  opts.q = 720 * i_scale;
  opts.n = 2560 * i_scale;
  opts.s0 = opts.q / 9;
  return opts;
}

double lorentzian_norm(const Vector& y, double gamma) {
  double v = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double s = y[i] / gamma;
    v += std::log1p(s * s);
  }
  return v;
}

CsInstance generate_instance(const GenerateOptions& options) {
  if (options.q < 1 || options.s0 < 1 || options.s0 > options.q || options.q > options.n)
    throw InvalidArgument("generate_instance: need 1 <= s0 <= q <= n");
  if (options.delta_scale <= 0.0) throw InvalidArgument("generate_instance: delta_scale <= 0");
  if (options.gamma <= 0.0) throw InvalidArgument("generate_instance: gamma <= 0");
  if ((options.loss == Loss::logistic || options.loss == Loss::poisson) &&
      !(options.delta && *options.delta > 0.0))
    throw InvalidArgument("generate_instance: this loss needs an explicit positive delta");
  if (options.mu < 0.0 || options.mu > 1.0)
    throw InvalidArgument("generate_instance: mu must lie in [0, 1]");

  CsInstance inst;
  inst.gamma = options.gamma;
  inst.mu = options.mu;
  inst.loss = options.loss;
  inst.seed = options.seed;
  inst.s0 = options.s0;

  Rng rng(options.seed);
  const int q = options.q;
  const int n = options.n;

  // Draw order is part of the format: A row-major, support, signal, noise.
  inst.A.resize(q, n);
  for (int r = 0; r < q; ++r)
    for (int c = 0; c < n; ++c) inst.A(r, c) = rng.gaussian();
  for (int c = 0; c < n; ++c) {
    const double norm = inst.A.col(c).norm();
    if (norm == 0.0) throw InvalidInstance("generate_instance: zero column");
    inst.A.col(c) /= norm;
  }

  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  for (int k = 0; k < options.s0; ++k) {
    const auto j = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - k)));
    std::swap(idx[static_cast<std::size_t>(k)], idx[static_cast<std::size_t>(j)]);
  }

  inst.x_orig = Vector::Zero(n);
  for (int k = 0; k < options.s0; ++k) inst.x_orig[idx[static_cast<std::size_t>(k)]] = rng.gaussian();

  switch (options.loss) {
    case Loss::sq_l2: {
      Vector noise(q);
      for (int i = 0; i < q; ++i) noise[i] = 0.01 * rng.gaussian();
      inst.b = inst.A * inst.x_orig + noise;
      const double sigma = options.delta_scale * noise.norm();
      inst.delta = 0.5 * sigma * sigma;
      break;
    }
    case Loss::lorentzian: {
      Vector noise(q);
      for (int i = 0; i < q; ++i)
        noise[i] = 0.01 * std::tan(M_PI * (rng.uniform01() - 0.5));
      inst.b = inst.A * inst.x_orig + noise;
      inst.delta = options.delta_scale * lorentzian_norm(noise, options.gamma);
      break;
    }
    case Loss::logistic: {
      inst.b.resize(q);
      for (int i = 0; i < q; ++i) inst.b[i] = rng.uniform01() < 0.5 ? -1.0 : 1.0;
      inst.delta = *options.delta;
      break;
    }
    case Loss::poisson: {
      const Vector z = inst.A * inst.x_orig;
      inst.b.resize(q);
      for (int i = 0; i < q; ++i)
        inst.b[i] = static_cast<double>(poisson_draw(rng, std::exp(z[i])));
      inst.delta = *options.delta;
      break;
    }
  }

  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(inst.A);
  if (cod.rank() < q) throw InvalidInstance("generate_instance: A is not full row rank");

  // The origin must stay infeasible, otherwise zero trivially solves the model.
  const Vector origin = Vector::Zero(n);
  if (!(raw_constraint_value(inst, origin) > 0.0))
    throw InvalidInstance("generate_instance: delta admits the origin");

  return inst;
}

ConstraintFunction sq_l2_constraint(const Matrix& A, const Vector& b, double delta) {
  check_shapes(A, b);
  auto Ap = std::make_shared<const Matrix>(A);
  auto bp = std::make_shared<const Vector>(b);
  ConstraintFunction g;
  g.value = [Ap, bp, delta](const Vector& x) {
    return 0.5 * ((*Ap) * x - *bp).squaredNorm() - delta;
  };
  g.gradient = [Ap, bp](const Vector& x) {
    return Vector(Ap->transpose() * ((*Ap) * x - *bp));
  };
  g.lipschitz_grad = power_lambda_max(A);
  return g;
}

ConstraintFunction lorentzian_constraint(const Matrix& A, const Vector& b, double delta,
                                         double gamma) {
  check_shapes(A, b);
  if (gamma <= 0.0) throw InvalidArgument("lorentzian_constraint: gamma must be positive");
  auto Ap = std::make_shared<const Matrix>(A);
  auto bp = std::make_shared<const Vector>(b);
  ConstraintFunction g;
  g.value = [Ap, bp, delta, gamma](const Vector& x) {
    return lorentzian_norm((*Ap) * x - *bp, gamma) - delta;
  };
  g.gradient = [Ap, bp, gamma](const Vector& x) {
    Vector z = (*Ap) * x - *bp;
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = 2.0 * z[i] / (gamma * gamma + z[i] * z[i]);
    return Vector(Ap->transpose() * z);
  };
  g.lipschitz_grad = (2.0 / (gamma * gamma)) * power_lambda_max(A);
  return g;
}

ConstraintFunction logistic_constraint(const Matrix& A, const Vector& b, double delta) {
  check_shapes(A, b);
  auto Ap = std::make_shared<const Matrix>(A);
  auto bp = std::make_shared<const Vector>(b);
  ConstraintFunction g;
  g.value = [Ap, bp, delta](const Vector& x) {
    const Vector z = (*Ap) * x;
    double v = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) v += log1p_exp((*bp)[i] * z[i]);
    return v - delta;
  };
  g.gradient = [Ap, bp](const Vector& x) {
    Vector z = (*Ap) * x;
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = (*bp)[i] * sigmoid((*bp)[i] * z[i]);
    return Vector(Ap->transpose() * z);
  };
  g.lipschitz_grad =
      0.25 * bp->cwiseAbs().maxCoeff() * bp->cwiseAbs().maxCoeff() * power_lambda_max(A);
  return g;
}

ConstraintFunction poisson_constraint(const Matrix& A, const Vector& b, double delta) {
  check_shapes(A, b);
  auto Ap = std::make_shared<const Matrix>(A);
  auto bp = std::make_shared<const Vector>(b);
  ConstraintFunction g;
  g.value = [Ap, bp, delta](const Vector& x) {
    const Vector z = (*Ap) * x;
    double v = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) v += -(*bp)[i] * z[i] + std::exp(z[i]);
    return v - delta;
  };
  g.gradient = [Ap, bp](const Vector& x) {
    Vector z = (*Ap) * x;
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = std::exp(z[i]) - (*bp)[i];
    return Vector(Ap->transpose() * z);
  };
  // The exponential has no global gradient modulus; the line search copes.
  g.lipschitz_grad = std::nullopt;
  return g;
}

Vector min_norm_init(const Matrix& A, const Vector& b) {
  check_shapes(A, b);
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(A);
  if (cod.rank() < A.rows()) throw InvalidInstance("min_norm_init: A is rank deficient");
  return cod.solve(b);
}

double power_lambda_max(const Matrix& A, double tol, int max_iters) {
  Rng rng(0x5eed0001ULL);  // fixed start so the estimate is reproducible
  Vector v(A.cols());
  for (Eigen::Index j = 0; j < v.size(); ++j) v[j] = rng.gaussian();
  v.normalize();

  double est = 0.0;
  double prev = -1.0;
  for (int it = 0; it < max_iters; ++it) {
    const Vector Av = A * v;
    est = Av.squaredNorm();
    const Vector w = A.transpose() * Av;
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    v = w / wn;
    if (std::abs(est - prev) <= tol * std::max(1.0, est)) break;
    prev = est;
  }
  return est;
}

DcProblem make_problem(const CsInstance& inst) {
  DcProblem p;
  p.dimension = inst.A.cols();
  p.f = SmoothTerm::zero();
  p.p1 = ConvexRegularizer::ell1();
  p.p2 = inst.mu > 0.0 ? ConvexRegularizer::scaled_norm(inst.mu) : ConvexRegularizer::none();
  switch (inst.loss) {
    case Loss::sq_l2:
      p.constraints.push_back(sq_l2_constraint(inst.A, inst.b, inst.delta));
      break;
    case Loss::lorentzian:
      p.constraints.push_back(lorentzian_constraint(inst.A, inst.b, inst.delta, inst.gamma));
      break;
    case Loss::logistic:
      p.constraints.push_back(logistic_constraint(inst.A, inst.b, inst.delta));
      break;
    case Loss::poisson:
      p.constraints.push_back(poisson_constraint(inst.A, inst.b, inst.delta));
      break;
  }
  return p;
}

Vector feasible_init(const CsInstance& inst) {
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(inst.A);
  if (cod.rank() < inst.A.rows()) throw InvalidInstance("feasible_init: A is rank deficient");

  if (inst.loss == Loss::sq_l2 || inst.loss == Loss::lorentzian) {
    // Zero residual, so the constraint value is exactly -delta.
    return cod.solve(inst.b);
  }

  // Slater search: drive the loss toward its infimum until strictly feasible.
  for (double m = 1.0; m <= 0x1p60; m *= 2.0) {
    Vector target(inst.b.size());
    if (inst.loss == Loss::logistic) {
      target = -m * inst.b;
    } else {
      for (Eigen::Index i = 0; i < inst.b.size(); ++i)
        target[i] = inst.b[i] > 0.0 ? std::log(inst.b[i]) : -m;
    }
    const Vector x = cod.solve(target);
    if (raw_constraint_value(inst, x) < 0.0) return x;
    if (inst.loss == Loss::poisson && inst.b.minCoeff() > 0.0) break;  // already at the infimum
  }
  throw InvalidInstance("feasible_init: no strictly feasible point found; delta is too small");
}

}  // namespace scpls
