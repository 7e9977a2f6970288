#include "core/special.hpp"

namespace lef {

double log_gamma(double x) {
  require(x > 0.0, errc::domain, "log_gamma: requires x > 0");
  return std::lgamma(x);
}

double digamma(double x) {
  require(x > 0.0, errc::domain, "digamma: requires x > 0");
  // Shift to x >= 10, then the asymptotic expansion in 1/x^2.
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // psi(x) ~ log x - 1/(2x) - sum B_{2n} / (2n x^{2n})
  double series = inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 -
                  inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0))))));
  return acc + std::log(x) - 0.5 * inv - series;
}

double log_student_z(double nu, std::size_t d) {
  require(nu > 0.0, errc::domain, "log_student_z: requires nu > 0");
  return log_gamma(0.5 * nu) + 0.5 * static_cast<double>(d) * std::log(nu * pi()) -
         log_gamma(0.5 * (nu + static_cast<double>(d)));
}

}  // namespace lef
