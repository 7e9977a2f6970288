#pragma once

#include <cmath>
#include <limits>
#include <span>

#include "core/linalg.hpp"

namespace lef {

// Non-linear coupling c_lambda(u, v) = log(1 + lambda <u,v>) / lambda, with
// the linear inner product recovered at lambda = 0.  Out-of-domain arguments
// (1 + lambda <u,v> <= 0) evaluate to -inf; no exception is thrown, matching
// the convention log(s) = -inf for s <= 0.
inline double coupling_scalar(double lambda, double dot_uv) {
  if (lambda == 0.0) return dot_uv;
  const double arg = 1.0 + lambda * dot_uv;
  if (arg <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(arg) / lambda;
}

inline double coupling_eval(double lambda, std::span<const double> u, std::span<const double> v) {
  return coupling_scalar(lambda, dot(u, v));
}

// Signed convexity residual of the first-argument map v -> c_lambda(v, u):
//   c(s v1 + (1-s) v2, u) - [s c(v1, u) + (1-s) c(v2, u)].
// >= 0 for lambda > 0 (concave), == 0 for lambda == 0, <= 0 for lambda < 0.
inline double coupling_convexity_residual(double lambda, std::span<const double> u,
                                          std::span<const double> v1, std::span<const double> v2,
                                          double s) {
  require(s >= 0.0 && s <= 1.0, errc::invalid_argument, "mixing weight must be in [0,1]");
  const double c1 = coupling_eval(lambda, v1, u);
  const double c2 = coupling_eval(lambda, v2, u);
  Vec mix(v1.size());
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = s * v1[i] + (1.0 - s) * v2[i];
  const double cmix = coupling_eval(lambda, mix, u);
  require(std::isfinite(c1) && std::isfinite(c2) && std::isfinite(cmix), errc::domain,
          "coupling_convexity_residual: coupling not finite");
  return cmix - (s * c1 + (1.0 - s) * c2);
}

// phi + psi - c, zero exactly at a c_lambda-subgradient pair.
inline double fenchel_young_residual(double phi, double psi, double coupling_value) {
  return phi + psi - coupling_value;
}

}  // namespace lef
