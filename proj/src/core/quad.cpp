#include "core/quad.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "core/coupling.hpp"
#include "core/special.hpp"

namespace lef {

namespace {

// 15-point Kronrod nodes on [-1, 1] and weights; odd indices form the
// embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

Interval gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double f1 = f(c - x);
    const double f2 = f(c + x);
    kron += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  kron *= h;
  gauss *= h;
  double err = std::abs(kron - gauss);
  if (!std::isfinite(kron)) err = std::numeric_limits<double>::infinity();
  return {a, b, kron, err};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, int max_intervals) {
  require(b > a, errc::invalid_argument, "integrate: requires b > a");
  std::priority_queue<Interval> heap;
  heap.push(gk15(f, a, b));
  double total_err = heap.top().error;
  double total_val = heap.top().value;
  int n = 1;
  while (total_err > abs_tol && n < max_intervals) {
    Interval worst = heap.top();
    heap.pop();
    total_err -= worst.error;
    total_val -= worst.value;
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval collapsed to machine resolution; keep its estimate as is.
      total_err += worst.error;
      total_val += worst.value;
      break;
    }
    const Interval left = gk15(f, worst.a, mid);
    const Interval right = gk15(f, mid, worst.b);
    heap.push(left);
    heap.push(right);
    total_err += left.error + right.error;
    total_val += left.value + right.value;
    ++n;
  }
  QuadResult out;
  out.value = total_val;
  out.error = total_err;
  out.converged = std::isfinite(total_val) && total_err <= abs_tol;
  out.intervals = n;
  return out;
}

QuadResult integrate_real_line(const std::function<double(double)>& f, double abs_tol,
                               int max_intervals) {
  auto g = [&f](double t) {
    const double c = std::cos(t);
    if (c == 0.0) return 0.0;
    return f(std::tan(t)) / (c * c);
  };
  return integrate(g, -0.5 * pi(), 0.5 * pi(), abs_tol, max_intervals);
}

double Scalar1DFamily::unnormalized(double x) const {
  const double c = coupling_scalar(lambda, theta * sufficient_statistic(x));
  return std::exp(c);  // exp(-inf) = 0 outside the support
}

namespace {

QuadResult family_norm(const Scalar1DFamily& family, double quad_tol, double alpha) {
  auto f = [&family, alpha](double x) {
    const double q = family.unnormalized(x);
    return alpha == 1.0 ? q : std::pow(q, alpha);
  };
  return family.whole_line ? integrate_real_line(f, quad_tol)
                           : integrate(f, family.a, family.b, quad_tol);
}

}  // namespace

double log_partition_1d(const Scalar1DFamily& family, double quad_tol) {
  require(static_cast<bool>(family.sufficient_statistic), errc::invalid_argument,
          "log_partition_1d: missing sufficient statistic");
  const QuadResult r = family_norm(family, quad_tol, 1.0);
  if (!r.converged || !(r.value > 0.0) || !std::isfinite(r.value))
    fail(errc::divergent_integral,
         "log_partition_1d: normalizing integral did not converge (estimate " +
             std::to_string(r.value) + ", error " + std::to_string(r.error) + ")");
  return std::log(r.value);
}

std::function<double(double)> density_1d(const Scalar1DFamily& family, double quad_tol) {
  const double logz = log_partition_1d(family, quad_tol);
  return [family, logz](double x) {
    const double c = coupling_scalar(family.lambda, family.theta * family.sufficient_statistic(x));
    if (!family.whole_line && (x < family.a || x > family.b)) return 0.0;
    return std::exp(c - logz);
  };
}

std::function<double(double)> escort_density_1d(const Scalar1DFamily& family, double alpha,
                                                double quad_tol) {
  require(alpha > 0.0, errc::invalid_argument, "escort exponent must be positive");
  const double logz = log_partition_1d(family, quad_tol);
  const QuadResult nr = family_norm(family, quad_tol, alpha);
  if (!nr.converged || !(nr.value > 0.0) || !std::isfinite(nr.value))
    fail(errc::divergent_integral, "escort_density_1d: q^alpha is not integrable");
  const double log_escort_norm = std::log(nr.value) - alpha * logz;
  return [family, alpha, logz, log_escort_norm](double x) {
    if (!family.whole_line && (x < family.a || x > family.b)) return 0.0;
    const double c = coupling_scalar(family.lambda, family.theta * family.sufficient_statistic(x));
    return std::exp(alpha * (c - logz) - log_escort_norm);
  };
}

}  // namespace lef
