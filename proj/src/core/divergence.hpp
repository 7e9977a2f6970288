#pragma once

#include <functional>
#include <optional>

#include "core/student.hpp"

namespace lef {

enum class DivergenceMethod { closed_form, quadrature_1d, monte_carlo };

struct DivergenceReport {
  double alpha = 1.0;
  double value = 0.0;
  DivergenceMethod method = DivergenceMethod::closed_form;
  std::optional<double> stderr_estimate;  // present iff method == monte_carlo
  std::optional<double> effective_sample_size;
  bool degenerate_weights = false;  // effective sample size < 10
};

// Renyi divergence RD_alpha(pi, q) with alpha tied to the q family
// (alpha = 1 + 2/(nu_q + d); alpha = 1 i.e. KL when q is Gaussian),
// assembled from the duality rewriting
//   RD_alpha(pi, q_theta) = phi_lambda(theta) - c_lambda(theta, pi^(a)(T)) - H_alpha(pi).
// Requires the target's escort moments to be finite (compatibility).
DivergenceReport renyi_divergence_closed(const StudentParams& pi, const StudentParams& q);

// Oracle: (alpha-1)^{-1} log int p^alpha q^{1-alpha} dx by adaptive quadrature
// over the real line; alpha = 1 evaluates the KL integrand instead.
DivergenceReport renyi_divergence_quadrature_1d(const std::function<double(double)>& log_p,
                                                const std::function<double(double)>& log_q,
                                                double alpha, double quad_tol);

// Importance-sampling estimator from n draws of pi:
//   alpha != 1:  (alpha-1)^{-1} log mean[(p/q)^(alpha-1)]
//   alpha == 1:  mean[log p - log q]
// with a jackknife standard error.
DivergenceReport renyi_divergence_mc(const std::function<Vec(SeededRng&)>& pi_sampler,
                                     const std::function<double(const Vec&)>& log_pi,
                                     const std::function<double(const Vec&)>& log_q,
                                     double alpha, std::size_t n, SeededRng& rng);

DivergenceReport renyi_divergence_mc(const StudentParams& pi, const StudentParams& q,
                                     double alpha, std::size_t n, SeededRng& rng);

}  // namespace lef
