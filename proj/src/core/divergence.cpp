#include "core/divergence.hpp"

#include <cmath>

#include "core/coupling.hpp"
#include "core/quad.hpp"
#include "core/special.hpp"

namespace lef {

namespace {

// Gaussian natural parameters and log-partition: theta1 = Sigma^{-1} mu,
// theta2 = -Sigma^{-1}/2, phi_0 = mu' Sigma^{-1} mu / 2 + logdet(Sigma)/2
// + d log(2 pi)/2.
double gaussian_log_partition(const StudentParams& q, NaturalParams& n) {
  const double d = static_cast<double>(q.dim());
  const Vec siv = q.sigma().solve(q.mu());
  n.lambda = 0.0;
  n.theta1 = siv;
  n.theta2 = q.sigma().inverse() * -0.5;
  return 0.5 * dot(q.mu(), siv) + 0.5 * q.sigma().logdet() + 0.5 * d * std::log(2.0 * pi());
}

}  // namespace

DivergenceReport renyi_divergence_closed(const StudentParams& pi, const StudentParams& q) {
  require(pi.dim() == q.dim(), errc::dimension_mismatch, "renyi_divergence_closed");
  const double alpha = family_alpha(q.nu(), q.dim());
  require(compatible(pi.nu(), pi.dim(), q.nu()), errc::incompatible,
          "renyi_divergence_closed: target escort moments are not finite for this family "
          "(margin " + std::to_string(compatibility_margin(pi.nu(), pi.dim(), q.nu())) + ")");

  NaturalParams n;
  double phi;
  if (q.gaussian()) {
    phi = gaussian_log_partition(q, n);
  } else {
    n = natural_from_params(q);
    phi = log_partition(n, q.nu());
  }

  // Escort moments of the target under the family exponent.
  const SufficientMoments t_bar = escort_moments(pi, q.nu());

  const double cpl =
      coupling_scalar(n.lambda, dot(n.theta1, t_bar.m1) + frobenius_dot(n.theta2, t_bar.M2));
  require(std::isfinite(cpl), errc::domain, "renyi_divergence_closed: coupling not finite");

  const double h_alpha = renyi_entropy(pi, alpha);
  DivergenceReport rep;
  rep.alpha = alpha;
  rep.method = DivergenceMethod::closed_form;
  rep.value = phi - cpl - h_alpha;
  return rep;
}

DivergenceReport renyi_divergence_quadrature_1d(const std::function<double(double)>& log_p,
                                                const std::function<double(double)>& log_q,
                                                double alpha, double quad_tol) {
  require(alpha > 0.0, errc::invalid_argument, "alpha must be positive");
  DivergenceReport rep;
  rep.alpha = alpha;
  rep.method = DivergenceMethod::quadrature_1d;
  if (alpha == 1.0) {
    auto f = [&](double x) {
      const double lp = log_p(x);
      if (lp == -std::numeric_limits<double>::infinity()) return 0.0;
      return (lp - log_q(x)) * std::exp(lp);
    };
    const QuadResult r = integrate_real_line(f, quad_tol);
    if (!r.converged)
      fail(errc::divergent_integral, "renyi_divergence_quadrature_1d: KL integral diverged");
    rep.value = r.value;
    return rep;
  }
  auto f = [&](double x) { return std::exp(alpha * log_p(x) + (1.0 - alpha) * log_q(x)); };
  const QuadResult r = integrate_real_line(f, quad_tol);
  if (!r.converged || !(r.value > 0.0))
    fail(errc::divergent_integral, "renyi_divergence_quadrature_1d: integral diverged");
  rep.value = std::log(r.value) / (alpha - 1.0);
  return rep;
}

DivergenceReport renyi_divergence_mc(const std::function<Vec(SeededRng&)>& pi_sampler,
                                     const std::function<double(const Vec&)>& log_pi,
                                     const std::function<double(const Vec&)>& log_q,
                                     double alpha, std::size_t n, SeededRng& rng) {
  require(n >= 2, errc::invalid_argument, "renyi_divergence_mc: needs n >= 2");
  DivergenceReport rep;
  rep.alpha = alpha;
  rep.method = DivergenceMethod::monte_carlo;

  if (alpha == 1.0) {
    Vec diffs(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec x = pi_sampler(rng);
      diffs[i] = log_pi(x) - log_q(x);
      mean += diffs[i];
    }
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : diffs) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n - 1);
    rep.value = mean;
    rep.stderr_estimate = std::sqrt(var / static_cast<double>(n));
    rep.effective_sample_size = static_cast<double>(n);
    return rep;
  }

  // Work with shifted log-weights for stability: w_i = (p/q)^(alpha-1).
  Vec logw(n);
  double max_logw = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec x = pi_sampler(rng);
    logw[i] = (alpha - 1.0) * (log_pi(x) - log_q(x));
    max_logw = std::max(max_logw, logw[i]);
  }
  double sum_w = 0.0, sum_w2 = 0.0;
  Vec w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::exp(logw[i] - max_logw);
    sum_w += w[i];
    sum_w2 += w[i] * w[i];
  }
  const double ess = sum_w * sum_w / sum_w2;
  rep.effective_sample_size = ess;
  rep.degenerate_weights = ess < 10.0;
  rep.value = (max_logw + std::log(sum_w / static_cast<double>(n))) / (alpha - 1.0);

  // Jackknife over leave-one-out estimates.
  double jk_mean = 0.0;
  Vec jk(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = sum_w - w[i];
    jk[i] = (max_logw + std::log(s / static_cast<double>(n - 1))) / (alpha - 1.0);
    jk_mean += jk[i];
  }
  jk_mean /= static_cast<double>(n);
  double jk_var = 0.0;
  for (double v : jk) jk_var += (v - jk_mean) * (v - jk_mean);
  jk_var *= static_cast<double>(n - 1) / static_cast<double>(n);
  rep.stderr_estimate = std::sqrt(jk_var);
  return rep;
}

DivergenceReport renyi_divergence_mc(const StudentParams& pi, const StudentParams& q,
                                     double alpha, std::size_t n, SeededRng& rng) {
  return renyi_divergence_mc([&pi](SeededRng& r) { return pi.sample(r); },
                             [&pi](const Vec& x) { return pi.log_density(x); },
                             [&q](const Vec& x) { return q.log_density(x); }, alpha, n, rng);
}

}  // namespace lef
