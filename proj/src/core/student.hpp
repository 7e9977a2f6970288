#pragma once

#include <cmath>
#include <limits>

#include "core/linalg.hpp"
#include "core/rng.hpp"

namespace lef {

// Multivariate Student family with fixed degrees of freedom nu, location mu
// and scale Sigma; nu = +inf selects the limiting Gaussian branch.  The
// family is a lambda-exponential family with lambda = -2/(nu+d) and
// sufficient statistics T(x) = (x, x x^T); the Gaussian branch has lambda = 0.
class StudentParams {
public:
  StudentParams(double nu, Vec mu, SpdMatrix sigma);

  static bool is_gaussian_nu(double nu) { return std::isinf(nu); }

  double nu() const { return nu_; }
  bool gaussian() const { return is_gaussian_nu(nu_); }
  std::size_t dim() const { return mu_.size(); }
  const Vec& mu() const { return mu_; }
  const SpdMatrix& sigma() const { return sigma_; }

  double lambda() const;          // -2/(nu+d), 0 for the Gaussian branch
  double alpha() const;           // 1 - lambda
  double log_z() const;           // Student normalizer log Z_nu (finite nu only)

  double log_density(const Vec& x) const;
  Vec grad_log_density(const Vec& x) const;

  // x = mu + L z sqrt(nu/w) with z ~ N(0, I), w ~ chi^2_nu; the Gaussian
  // branch drops the w factor.  Each sample consumes the given stream.
  Vec sample(SeededRng& rng) const;
  std::vector<Vec> sample(std::size_t n, SeededRng& rng) const;

private:
  double nu_;
  Vec mu_;
  SpdMatrix sigma_;
};

// Natural parameters (theta1, theta2) of the Student family together with
// the family's lambda.  theta2 is negative definite; dom(phi_lambda) further
// requires 2(nu+d) + theta1^T theta2^{-1} theta1 > 0.
struct NaturalParams {
  Vec theta1;
  Matrix theta2;
  double lambda = 0.0;

  std::size_t dim() const { return theta1.size(); }
};

// Expectations of the sufficient statistics: m1 = E[x], M2 = E[x x^T].
struct SufficientMoments {
  Vec m1;
  Matrix M2;

  std::size_t dim() const { return m1.size(); }
  SufficientMoments scaled(double w) const;
  SufficientMoments axpy(double w, const SufficientMoments& other) const;  // this + w*other
};

SufficientMoments moments_of_point(const Vec& x);

// Chart maps between (mu, Sigma) and the natural parameters, in closed form.
// Only the finite-nu branch has a natural-parameter chart.
NaturalParams natural_from_params(const StudentParams& p);
StudentParams params_from_natural(const NaturalParams& n, double nu);

// lambda-log-partition phi_lambda(theta) in closed form.
double log_partition(const NaturalParams& n, double nu);

// Renyi entropy H_alpha of the Student (or Gaussian) distribution; alpha = 1
// evaluates the Shannon entropy through the analytic limit.  Requires
// alpha (nu + d) > d for convergence.
double renyi_entropy(const StudentParams& p, double alpha);

// Entropy function psi_lambda(theta) = -H_{1+2/(nu+d)}(q_theta), evaluated
// from (mu, Sigma).
double psi_lambda(const StudentParams& p);

// Escort exponent tied to an approximating family with nu_q degrees of
// freedom in dimension d: alpha = 1 + 2/(nu_q + d); alpha = 1 for nu_q = inf.
double family_alpha(double nu_q, std::size_t d);

// Well-posedness of the escort first/second moments of a T_{nu_p} member
// under the exponent of the T_{nu_q} family:  nu_p + 2(nu_p+d)/(nu_q+d) > 2.
// (Gaussian target is always fine; Gaussian family needs nu_p > 2.)
double compatibility_margin(double nu_p, std::size_t d, double nu_q);
bool compatible(double nu_p, std::size_t d, double nu_q);

// Escort law: the escort of a T_{nu_p} member under the T_{nu_q} family
// exponent is the Student with nu^(a) = nu_p + 2(nu_p+d)/(nu_q+d), same
// location, scale (nu_p/nu^(a)) Sigma_p.
StudentParams escort(const StudentParams& p, double nu_q);

// First and second escort moments; requires the compatibility margin > 0.
SufficientMoments escort_moments(const StudentParams& p, double nu_q);

// Moment matching: mu = m1, Sigma = M2 - m1 m1^T.  An optional eigenvalue
// floor (jitter) may be enabled for Monte-Carlo-noisy moments; it is off by
// default so estimator failures surface as errors.
StudentParams params_from_escort_moments(double nu, const SufficientMoments& m,
                                         double jitter_floor = 0.0);

}  // namespace lef
