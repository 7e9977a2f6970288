#pragma once

#include <cmath>

#include "core/error.hpp"

namespace lef {

// log Gamma(x) for x > 0.
double log_gamma(double x);

// Digamma function psi(x) = d/dx log Gamma(x), x > 0.
double digamma(double x);

// Student normalizer Z_nu = Gamma(nu/2) (nu pi)^{d/2} / Gamma((nu+d)/2), in log.
double log_student_z(double nu, std::size_t d);

constexpr double pi() { return 3.14159265358979323846; }

}  // namespace lef
