#pragma once

#include <functional>
#include <limits>

#include "core/error.hpp"

namespace lef {

struct QuadResult {
  double value = std::numeric_limits<double>::quiet_NaN();
  double error = std::numeric_limits<double>::infinity();
  bool converged = false;
  int intervals = 0;
};

// Adaptive Gauss-Kronrod 15(7) on a finite interval.  Bisects the interval
// with the largest Kronrod error estimate until the summed estimate drops
// below abs_tol (or the interval budget runs out, in which case converged
// stays false).
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, int max_intervals = 4000);

// Integral over the whole real line through x = tan(t), t in (-pi/2, pi/2).
// Student-type integrands with polynomial tail decay become bounded and
// smooth under this substitution, so no truncation of the tails is needed.
QuadResult integrate_real_line(const std::function<double(double)>& f, double abs_tol,
                               int max_intervals = 4000);

// One-dimensional member of the lambda-exponential family:
//   q(x) = exp(c_lambda(theta, T(x)) - log_partition)
// with a scalar sufficient statistic T.  The support is the set where
// 1 + lambda * theta * T(x) > 0; outside it the density is exactly zero.
struct Scalar1DFamily {
  double lambda = 0.0;
  std::function<double(double)> sufficient_statistic;
  double theta = 0.0;
  // Integration domain: the whole real line (via the tangent substitution)
  // unless a finite [a, b] is given.
  bool whole_line = true;
  double a = 0.0, b = 0.0;

  double unnormalized(double x) const;
};

// log integral of exp(c_lambda(theta, T(x))) over the family's domain.
// A divergent (or non-converged) integral is reported as errc::divergent_integral.
double log_partition_1d(const Scalar1DFamily& family, double quad_tol);

// Normalized density function of the family (computes the log-partition once).
std::function<double(double)> density_1d(const Scalar1DFamily& family, double quad_tol);

// Escort transform of a generic density: x -> p(x)^alpha / integral of p^alpha.
// Throws errc::divergent_integral when p^alpha is not integrable.
std::function<double(double)> escort_density_1d(const Scalar1DFamily& family, double alpha,
                                                double quad_tol);

inline constexpr double kDefaultQuadTol = 1e-10;

}  // namespace lef
