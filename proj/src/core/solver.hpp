#pragma once

#include <optional>
#include <string>

#include "core/mala.hpp"
#include "core/student.hpp"

namespace lef {

// Step-size schedules for the proximal-like iterations.  The harmonic rule
// tau_k = 1/k is indexed from k = 1 (tau_1 = 1).
struct ProxSchedule {
  enum class Rule { constant, harmonic };
  Rule rule = Rule::harmonic;
  double tau = 1.0;  // used by the constant rule

  double at(std::size_t k) const {  // k >= 1
    require(k >= 1, errc::invalid_argument, "ProxSchedule: k starts at 1");
    if (rule == Rule::constant) return tau;
    return 1.0 / static_cast<double>(k);
  }
  static ProxSchedule constant(double tau) { return {Rule::constant, tau}; }
  static ProxSchedule harmonic() { return {Rule::harmonic, 0.0}; }
};

// Proximal-like update in escort-moment space for the variational problem:
//   tau/(1+tau) * target + 1/(1+tau) * current, componentwise on (m1, M2).
SufficientMoments prox_vi_update(const SufficientMoments& current,
                                 const SufficientMoments& target, double tau);

// Counterpart for maximum likelihood with N data points whose mean
// sufficient statistic is data_stat:
//   N tau/(1+N tau) * data_stat + 1/(1+N tau) * current.
SufficientMoments prox_mle_update(const SufficientMoments& current,
                                  const SufficientMoments& data_stat, double tau, std::size_t n);

struct VIIterate {
  StudentParams params;
  SufficientMoments cumulative_moments;
  std::size_t samples_used = 0;
  std::optional<double> acceptance;  // MALA variants only
};

struct VIRun {
  std::vector<VIIterate> iterates;
  bool aborted = false;
  std::string abort_reason;
};

// Idealized solver: per iteration draws n_per_iter exact samples from the
// target's escort, accumulates running means of (x, x x^T) over all samples
// so far, and moment-matches.  Requires compatibility of (nu_pi, nu_family).
VIRun vi_exact_escort(const StudentParams& target, double family_nu, std::size_t n_per_iter,
                      std::size_t n_iters, SeededRng rng);

// As above but the escort samples come from a MALA chain with identity scale
// and the default step size; x0 ~ Uniform[-5,5]^d.
VIRun vi_plain_mala(const TargetOracle& oracle, double family_nu, std::size_t n_per_iter,
                    std::size_t n_iters, SeededRng rng);

// Scale-adapted variant: iteration k runs the chain with A = Sigma_k, builds
// the moment estimate from that iteration's samples only, and combines with
// weights 1/(k+1) and k/(k+1); mu_0 = x_0 ~ Uniform[-5,5]^d, Sigma_0 = I.
// A non-PD combined covariance aborts the run with a reason.
VIRun vi_scaled_mala(const TargetOracle& oracle, double family_nu, std::size_t n_per_iter,
                     std::size_t n_iters, SeededRng rng);

TargetOracle student_oracle(const StudentParams& p);

// Moment-matched (relaxed) maximum likelihood fit plus its certified
// log-likelihood bound psi_lambda(theta*).  For the Gaussian branch the fit
// is the exact MLE.
struct MleFit {
  StudentParams params;
  double bound = 0.0;  // mean log-likelihood >= bound for lambda < 0
};

MleFit mle_moment_match(const std::vector<Vec>& data, double nu);

// Online variant processing one point per step with the harmonic averaging
// weights; the k-th update (k = 0, 1, ...) weighs the new point by 1/(k+1).
// While the running moment covariance is not yet PD the reported parameters
// hold the previous scale; the moment state itself keeps exact running means.
struct OnlineMleResult {
  std::vector<StudentParams> trajectory;  // parameters after each point
  SufficientMoments final_moments;
};

OnlineMleResult mle_online(const std::vector<Vec>& stream, double nu,
                           const StudentParams& init);

// Mixture of J Student (or Gaussian) components sharing (nu, d).
struct MixtureModel {
  Vec weights;
  std::vector<StudentParams> components;

  std::size_t size() const { return components.size(); }
  std::size_t dim() const { return components.empty() ? 0 : components.front().dim(); }
  double log_density(const Vec& x) const;
  Vec sample(SeededRng& rng) const;  // component by weight, then the component
  void validate() const;
};

// Responsibilities gamma[i][j] = xi_j q_j(x_i) / sum_j' xi_j' q_j'(x_i),
// computed in log space.  Rows whose components all underflow become uniform
// (flagged through the returned count).
struct Responsibilities {
  std::vector<Vec> gamma;   // N x J
  std::size_t underflow_rows = 0;
};

Responsibilities em_responsibilities(const MixtureModel& model, const std::vector<Vec>& data);

// One relaxed EM step: weight update by mean responsibility, component
// update by responsibility-weighted moment matching.  Empty components are
// frozen; a non-PD component covariance is jittered once (1e-8 tr/d) and
// errors if still non-PD.
struct EmStepInfo {
  std::size_t frozen_components = 0;
  std::size_t jittered_components = 0;
  std::size_t underflow_rows = 0;
};

MixtureModel em_step(const MixtureModel& model, const std::vector<Vec>& data,
                     EmStepInfo* info = nullptr);

double log_likelihood(const StudentParams& p, const std::vector<Vec>& data);
double log_likelihood(const MixtureModel& m, const std::vector<Vec>& data);

}  // namespace lef
