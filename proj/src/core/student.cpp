#include "core/student.hpp"

#include <cmath>

#include "core/special.hpp"

namespace lef {

StudentParams::StudentParams(double nu, Vec mu, SpdMatrix sigma)
    : nu_(nu), mu_(std::move(mu)), sigma_(std::move(sigma)) {
  require(nu_ > 0.0, errc::invalid_argument, "StudentParams: nu must be positive");
  require(sigma_.dim() == mu_.size(), errc::dimension_mismatch,
          "StudentParams: mu and sigma dimensions differ");
}

double StudentParams::lambda() const {
  if (gaussian()) return 0.0;
  return -2.0 / (nu_ + static_cast<double>(dim()));
}

double StudentParams::alpha() const { return 1.0 - lambda(); }

double StudentParams::log_z() const {
  require(!gaussian(), errc::domain, "log_z: Gaussian branch has no Student normalizer");
  return log_student_z(nu_, dim());
}

double StudentParams::log_density(const Vec& x) const {
  require(x.size() == dim(), errc::dimension_mismatch, "log_density: dimension mismatch");
  Vec r(dim());
  for (std::size_t i = 0; i < dim(); ++i) r[i] = x[i] - mu_[i];
  const double q = sigma_.quad_form(r);
  const double d = static_cast<double>(dim());
  if (gaussian()) return -0.5 * (d * std::log(2.0 * pi()) + sigma_.logdet() + q);
  return -log_z() - 0.5 * sigma_.logdet() - 0.5 * (nu_ + d) * std::log1p(q / nu_);
}

Vec StudentParams::grad_log_density(const Vec& x) const {
  require(x.size() == dim(), errc::dimension_mismatch, "grad_log_density: dimension mismatch");
  Vec r(dim());
  for (std::size_t i = 0; i < dim(); ++i) r[i] = x[i] - mu_[i];
  Vec w = sigma_.solve(r);
  if (gaussian()) {
    for (double& v : w) v = -v;
    return w;
  }
  const double d = static_cast<double>(dim());
  double q = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) q += r[i] * w[i];
  const double scale = -(nu_ + d) / (nu_ + q);
  for (double& v : w) v *= scale;
  return w;
}

Vec StudentParams::sample(SeededRng& rng) const {
  Vec z = rng.normal_vec(dim());
  Vec y = sigma_.lower_times(z);
  double scale = 1.0;
  if (!gaussian()) {
    const double w = rng.chi_square(nu_);
    scale = std::sqrt(nu_ / w);
  }
  for (std::size_t i = 0; i < dim(); ++i) y[i] = mu_[i] + scale * y[i];
  return y;
}

std::vector<Vec> StudentParams::sample(std::size_t n, SeededRng& rng) const {
  std::vector<Vec> xs;
  xs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) xs.push_back(sample(rng));
  return xs;
}

SufficientMoments SufficientMoments::scaled(double w) const {
  SufficientMoments out = *this;
  for (double& v : out.m1) v *= w;
  out.M2 *= w;
  return out;
}

SufficientMoments SufficientMoments::axpy(double w, const SufficientMoments& other) const {
  require(dim() == other.dim(), errc::dimension_mismatch, "SufficientMoments::axpy");
  SufficientMoments out = *this;
  for (std::size_t i = 0; i < out.m1.size(); ++i) out.m1[i] += w * other.m1[i];
  out.M2 += other.M2 * w;
  return out;
}

SufficientMoments moments_of_point(const Vec& x) {
  return {x, Matrix::outer(x, x)};
}

NaturalParams natural_from_params(const StudentParams& p) {
  require(!p.gaussian(), errc::domain,
          "natural_from_params: no natural-parameter chart for the Gaussian branch");
  const double nu = p.nu();
  const double d = static_cast<double>(p.dim());
  const Vec sigma_inv_mu = p.sigma().solve(p.mu());
  const double m = dot(p.mu(), sigma_inv_mu);
  NaturalParams n;
  n.lambda = p.lambda();
  n.theta1.assign(p.dim(), 0.0);
  const double c1 = (nu + d) / (nu + m);
  for (std::size_t i = 0; i < p.dim(); ++i) n.theta1[i] = c1 * sigma_inv_mu[i];
  n.theta2 = p.sigma().inverse() * (-(nu + d) / (2.0 * (nu + m)));
  return n;
}

namespace {

// theta1^T theta2^{-1} theta1, with theta2 negative definite.
double theta_quad(const NaturalParams& n, SpdMatrix* neg_theta2 = nullptr) {
  Matrix neg = n.theta2 * -1.0;
  std::size_t pivot = 0;
  auto f = SpdMatrix::try_factor(neg, &pivot);
  require(f.has_value(), errc::domain, "theta2 is not negative definite");
  if (neg_theta2) *neg_theta2 = *f;
  return -f->quad_form(n.theta1);
}

}  // namespace

StudentParams params_from_natural(const NaturalParams& n, double nu) {
  require(nu > 0.0 && std::isfinite(nu), errc::invalid_argument,
          "params_from_natural: nu must be finite and positive");
  const double d = static_cast<double>(n.dim());
  SpdMatrix neg_theta2;
  const double s = theta_quad(n, &neg_theta2);
  const double dom = 2.0 * (nu + d) + s;
  require(dom > 0.0, errc::domain,
          "params_from_natural: outside dom(phi_lambda): 2(nu+d) + theta1' theta2^-1 theta1 = " +
              std::to_string(dom));
  Vec mu = neg_theta2.solve(n.theta1);
  for (double& v : mu) v *= 0.5;
  Matrix sigma = neg_theta2.inverse() * (dom / (4.0 * nu));
  sigma.symmetrize();
  return StudentParams(nu, std::move(mu), SpdMatrix::factor(sigma));
}

double log_partition(const NaturalParams& n, double nu) {
  require(nu > 0.0 && std::isfinite(nu), errc::invalid_argument,
          "log_partition: nu must be finite and positive");
  const double d = static_cast<double>(n.dim());
  SpdMatrix neg_theta2;
  const double s = theta_quad(n, &neg_theta2);
  const double dom = 2.0 * (nu + d) + s;
  require(dom > 0.0, errc::domain, "log_partition: outside dom(phi_lambda)");
  // logdet(-theta2^{-1}) = -logdet(-theta2)
  return -0.5 * d * std::log(4.0 * nu) - 0.5 * neg_theta2.logdet() +
         0.5 * (nu + d) * std::log(2.0 * (nu + d)) - 0.5 * nu * std::log(dom) +
         log_student_z(nu, n.dim());
}

double renyi_entropy(const StudentParams& p, double alpha) {
  require(alpha > 0.0, errc::invalid_argument, "renyi_entropy: alpha must be positive");
  const double d = static_cast<double>(p.dim());
  const double half_logdet = 0.5 * p.sigma().logdet();
  if (p.gaussian()) {
    if (alpha == 1.0) return 0.5 * d * (1.0 + std::log(2.0 * pi())) + half_logdet;
    return 0.5 * d * std::log(2.0 * pi()) + half_logdet + 0.5 * d * std::log(alpha) / (alpha - 1.0);
  }
  const double nu = p.nu();
  if (alpha == 1.0) {
    // Analytic alpha -> 1 limit of the closed form below.
    return log_student_z(nu, p.dim()) + half_logdet +
           0.5 * (nu + d) * (digamma(0.5 * (nu + d)) - digamma(0.5 * nu));
  }
  const double nup = alpha * (nu + d) - d;
  require(nup > 0.0, errc::domain,
          "renyi_entropy: integral diverges, needs alpha (nu + d) > d");
  return (log_student_z(nup, p.dim()) - alpha * log_student_z(nu, p.dim()) +
          0.5 * d * std::log(nu / nup) + (1.0 - alpha) * half_logdet) /
         (1.0 - alpha);
}

double psi_lambda(const StudentParams& p) { return -renyi_entropy(p, p.alpha()); }

double family_alpha(double nu_q, std::size_t d) {
  if (StudentParams::is_gaussian_nu(nu_q)) return 1.0;
  return 1.0 + 2.0 / (nu_q + static_cast<double>(d));
}

double compatibility_margin(double nu_p, std::size_t d, double nu_q) {
  if (StudentParams::is_gaussian_nu(nu_p)) return std::numeric_limits<double>::infinity();
  if (StudentParams::is_gaussian_nu(nu_q)) return nu_p - 2.0;
  return nu_p + 2.0 * (nu_p + static_cast<double>(d)) / (nu_q + static_cast<double>(d)) - 2.0;
}

bool compatible(double nu_p, std::size_t d, double nu_q) {
  return compatibility_margin(nu_p, d, nu_q) > 0.0;
}

StudentParams escort(const StudentParams& p, double nu_q) {
  const double d = static_cast<double>(p.dim());
  const double a = family_alpha(nu_q, p.dim());
  if (p.gaussian()) {
    // A Gaussian to the power alpha is the Gaussian with scale Sigma/alpha.
    if (a == 1.0) return p;
    Matrix scaled = p.sigma().dense() * (1.0 / a);
    return StudentParams(p.nu(), p.mu(), SpdMatrix::factor(scaled));
  }
  if (a == 1.0) return p;
  const double nu_a = p.nu() + 2.0 * (p.nu() + d) / (nu_q + d);
  Matrix scaled = p.sigma().dense() * (p.nu() / nu_a);
  return StudentParams(nu_a, p.mu(), SpdMatrix::factor(scaled));
}

SufficientMoments escort_moments(const StudentParams& p, double nu_q) {
  const std::size_t d = p.dim();
  const double margin = compatibility_margin(p.nu(), d, nu_q);
  require(margin > 0.0, errc::incompatible,
          "escort_moments: escort lacks finite second moments (margin " +
              std::to_string(margin) + " <= 0)");
  SufficientMoments m;
  m.m1 = p.mu();
  if (p.gaussian()) {
    const double a = family_alpha(nu_q, d);
    m.M2 = p.sigma().dense() * (1.0 / a) + Matrix::outer(p.mu(), p.mu());
    return m;
  }
  const double nu_a = margin + 2.0;  // nu_p + 2 (nu_p + d)/(nu_q + d)
  m.M2 = p.sigma().dense() * (p.nu() / (nu_a - 2.0)) + Matrix::outer(p.mu(), p.mu());
  return m;
}

StudentParams params_from_escort_moments(double nu, const SufficientMoments& m,
                                         double jitter_floor) {
  Matrix cov = m.M2 - Matrix::outer(m.m1, m.m1);
  cov.symmetrize();
  if (jitter_floor > 0.0)
    for (std::size_t i = 0; i < cov.rows(); ++i) cov(i, i) += jitter_floor;
  auto f = SpdMatrix::try_factor(cov);
  if (!f)
    fail(errc::not_positive_definite,
         "params_from_escort_moments: moment covariance is not positive definite "
         "(smallest eigenvalue " + std::to_string(sym_eigenvalues(cov).front()) + ")");
  return StudentParams(nu, m.m1, *f);
}

}  // namespace lef
