#include "core/solver.hpp"

#include <algorithm>
#include <cmath>

namespace lef {

namespace {

SufficientMoments convex_combine(const SufficientMoments& current,
                                 const SufficientMoments& target, double w_target) {
  require(current.dim() == target.dim(), errc::dimension_mismatch, "moment combine");
  SufficientMoments out = current.scaled(1.0 - w_target);
  return out.axpy(w_target, target);
}

}  // namespace

SufficientMoments prox_vi_update(const SufficientMoments& current,
                                 const SufficientMoments& target, double tau) {
  require(tau > 0.0, errc::invalid_argument, "prox_vi_update: tau must be positive");
  return convex_combine(current, target, tau / (1.0 + tau));
}

SufficientMoments prox_mle_update(const SufficientMoments& current,
                                  const SufficientMoments& data_stat, double tau, std::size_t n) {
  require(tau > 0.0, errc::invalid_argument, "prox_mle_update: tau must be positive");
  require(n >= 1, errc::invalid_argument, "prox_mle_update: n must be >= 1");
  const double nt = static_cast<double>(n) * tau;
  return convex_combine(current, data_stat, nt / (1.0 + nt));
}

namespace {

struct MomentAccumulator {
  explicit MomentAccumulator(std::size_t d) : sum{Vec(d, 0.0), Matrix(d, d)} {}

  void add(const Vec& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      sum.m1[i] += x[i];
      for (std::size_t j = 0; j < x.size(); ++j) sum.M2(i, j) += x[i] * x[j];
    }
    ++count;
  }

  SufficientMoments mean() const {
    require(count > 0, errc::invalid_argument, "moment mean of empty accumulator");
    return sum.scaled(1.0 / static_cast<double>(count));
  }

  SufficientMoments sum;
  std::size_t count = 0;
};

Vec uniform_box(std::size_t d, double half_width, SeededRng& rng) {
  Vec x(d);
  for (double& v : x) v = rng.uniform(-half_width, half_width);
  return x;
}

}  // namespace

VIRun vi_exact_escort(const StudentParams& target, double family_nu, std::size_t n_per_iter,
                      std::size_t n_iters, SeededRng rng) {
  require(n_per_iter >= 1, errc::invalid_argument, "vi_exact_escort: n_per_iter must be >= 1");
  require(compatible(target.nu(), target.dim(), family_nu), errc::incompatible,
          "vi_exact_escort: (nu_target, nu_family) fails the well-posedness inequality");
  const StudentParams escort_target = escort(target, family_nu);
  VIRun run;
  MomentAccumulator acc(target.dim());
  for (std::size_t k = 0; k < n_iters; ++k) {
    for (std::size_t i = 0; i < n_per_iter; ++i) acc.add(escort_target.sample(rng));
    try {
      StudentParams fit = params_from_escort_moments(family_nu, acc.mean());
      run.iterates.push_back({std::move(fit), acc.mean(), acc.count, std::nullopt});
    } catch (const Error& e) {
      run.aborted = true;
      run.abort_reason = e.what();
      break;
    }
  }
  return run;
}

TargetOracle student_oracle(const StudentParams& p) {
  TargetOracle o;
  o.dim = p.dim();
  o.log_unnormalized = [p](const Vec& x) { return p.log_density(x); };
  o.grad_log_unnormalized = [p](const Vec& x) { return p.grad_log_density(x); };
  return o;
}

VIRun vi_plain_mala(const TargetOracle& oracle, double family_nu, std::size_t n_per_iter,
                    std::size_t n_iters, SeededRng rng) {
  require(n_per_iter >= 1, errc::invalid_argument, "vi_plain_mala: n_per_iter must be >= 1");
  const std::size_t d = oracle.dim;
  const double alpha = family_alpha(family_nu, d);
  VIRun run;
  MalaState chain = mala_init(oracle, alpha, uniform_box(d, 5.0, rng), SpdMatrix::identity(d),
                              default_step(d));
  MomentAccumulator acc(d);
  for (std::size_t k = 0; k < n_iters; ++k) {
    const std::uint64_t acc0 = chain.accepted_count, prop0 = chain.proposed_count;
    for (std::size_t i = 0; i < n_per_iter; ++i) {
      mala_step(chain, oracle, rng);
      acc.add(chain.x);
    }
    const double rate = static_cast<double>(chain.accepted_count - acc0) /
                        static_cast<double>(chain.proposed_count - prop0);
    try {
      StudentParams fit = params_from_escort_moments(family_nu, acc.mean());
      run.iterates.push_back({std::move(fit), acc.mean(), acc.count, rate});
    } catch (const Error& e) {
      run.aborted = true;
      run.abort_reason = e.what();
      break;
    }
  }
  return run;
}

VIRun vi_scaled_mala(const TargetOracle& oracle, double family_nu, std::size_t n_per_iter,
                     std::size_t n_iters, SeededRng rng) {
  require(n_per_iter >= 1, errc::invalid_argument, "vi_scaled_mala: n_per_iter must be >= 1");
  const std::size_t d = oracle.dim;
  const double alpha = family_alpha(family_nu, d);
  VIRun run;
  Vec x = uniform_box(d, 5.0, rng);
  Vec mu = x;
  SpdMatrix sigma = SpdMatrix::identity(d);
  // Current iterate in escort-moment space: (mu_k, Sigma_k + mu_k mu_k^T).
  SufficientMoments state{mu, sigma.dense() + Matrix::outer(mu, mu)};
  std::size_t samples_used = 0;
  for (std::size_t k = 0; k < n_iters; ++k) {
    MalaState chain = mala_init(oracle, alpha, x, sigma, default_step(d));
    MomentAccumulator batch(d);
    for (std::size_t i = 0; i < n_per_iter; ++i) {
      mala_step(chain, oracle, rng);
      batch.add(chain.x);
    }
    x = chain.x;
    samples_used += n_per_iter;
    const double w_new = 1.0 / static_cast<double>(k + 1);
    state = convex_combine(state, batch.mean(), w_new);
    try {
      StudentParams fit = params_from_escort_moments(family_nu, state);
      sigma = fit.sigma();
      run.iterates.push_back({std::move(fit), state, samples_used, chain.acceptance_rate()});
    } catch (const Error& e) {
      run.aborted = true;
      run.abort_reason = e.what();
      break;
    }
  }
  return run;
}

MleFit mle_moment_match(const std::vector<Vec>& data, double nu) {
  require(!data.empty(), errc::invalid_argument, "mle_moment_match: empty data");
  const std::size_t d = data.front().size();
  require(data.size() >= d + 1, errc::invalid_argument,
          "mle_moment_match: needs at least d+1 points");
  MomentAccumulator acc(d);
  for (const Vec& x : data) {
    require(x.size() == d, errc::dimension_mismatch, "mle_moment_match: ragged data");
    acc.add(x);
  }
  std::optional<StudentParams> fit;
  try {
    fit = params_from_escort_moments(nu, acc.mean());
  } catch (const Error&) {
    fail(errc::degenerate, "mle_moment_match: degenerate data (sample covariance not PD)");
  }
  const double bound = psi_lambda(*fit);
  return {std::move(*fit), bound};
}

OnlineMleResult mle_online(const std::vector<Vec>& stream, double nu,
                           const StudentParams& init) {
  require(!stream.empty(), errc::invalid_argument, "mle_online: empty stream");
  const std::size_t d = init.dim();
  OnlineMleResult out;
  out.trajectory.reserve(stream.size());
  SufficientMoments state{Vec(d, 0.0), Matrix(d, d)};
  SpdMatrix held_sigma = init.sigma();
  for (std::size_t k = 0; k < stream.size(); ++k) {
    require(stream[k].size() == d, errc::dimension_mismatch, "mle_online: ragged stream");
    const double w_new = 1.0 / static_cast<double>(k + 1);
    state = convex_combine(state, moments_of_point(stream[k]), w_new);
    Matrix cov = state.M2 - Matrix::outer(state.m1, state.m1);
    cov.symmetrize();
    auto f = SpdMatrix::try_factor(cov);
    if (f) held_sigma = *f;
    out.trajectory.emplace_back(nu, state.m1, held_sigma);
  }
  out.final_moments = state;
  return out;
}

void MixtureModel::validate() const {
  require(!components.empty() && weights.size() == components.size(), errc::invalid_argument,
          "MixtureModel: weights/components mismatch");
  double s = 0.0;
  for (double w : weights) {
    require(w >= 0.0, errc::invalid_argument, "MixtureModel: negative weight");
    s += w;
  }
  require(std::abs(s - 1.0) < 1e-12, errc::invalid_argument, "MixtureModel: weights must sum to 1");
  for (const StudentParams& c : components) {
    require(c.dim() == dim(), errc::dimension_mismatch, "MixtureModel: mixed dimensions");
    require(c.nu() == components.front().nu(), errc::invalid_argument,
            "MixtureModel: components must share nu");
  }
}

double MixtureModel::log_density(const Vec& x) const {
  double max_term = -std::numeric_limits<double>::infinity();
  Vec terms(size());
  for (std::size_t j = 0; j < size(); ++j) {
    terms[j] = (weights[j] > 0.0 ? std::log(weights[j]) : -std::numeric_limits<double>::infinity()) +
               components[j].log_density(x);
    max_term = std::max(max_term, terms[j]);
  }
  if (max_term == -std::numeric_limits<double>::infinity()) return max_term;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - max_term);
  return max_term + std::log(s);
}

Vec MixtureModel::sample(SeededRng& rng) const {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t j = 0; j < size(); ++j) {
    acc += weights[j];
    if (u <= acc || j + 1 == size()) return components[j].sample(rng);
  }
  return components.back().sample(rng);
}

Responsibilities em_responsibilities(const MixtureModel& model, const std::vector<Vec>& data) {
  model.validate();
  const std::size_t n = data.size();
  const std::size_t j_count = model.size();
  Responsibilities out;
  out.gamma.assign(n, Vec(j_count, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    Vec logits(j_count);
    double max_term = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < j_count; ++j) {
      logits[j] = (model.weights[j] > 0.0 ? std::log(model.weights[j])
                                          : -std::numeric_limits<double>::infinity()) +
                  model.components[j].log_density(data[i]);
      max_term = std::max(max_term, logits[j]);
    }
    if (!std::isfinite(max_term)) {
      // All components underflow at this point: fall back to a uniform row.
      ++out.underflow_rows;
      for (std::size_t j = 0; j < j_count; ++j)
        out.gamma[i][j] = 1.0 / static_cast<double>(j_count);
      continue;
    }
    double s = 0.0;
    for (std::size_t j = 0; j < j_count; ++j) {
      out.gamma[i][j] = std::exp(logits[j] - max_term);
      s += out.gamma[i][j];
    }
    for (std::size_t j = 0; j < j_count; ++j) out.gamma[i][j] /= s;
  }
  return out;
}

MixtureModel em_step(const MixtureModel& model, const std::vector<Vec>& data, EmStepInfo* info) {
  require(!data.empty(), errc::invalid_argument, "em_step: empty data");
  const Responsibilities resp = em_responsibilities(model, data);
  const std::size_t n = data.size();
  const std::size_t d = model.dim();
  EmStepInfo local{};
  local.underflow_rows = resp.underflow_rows;

  MixtureModel next = model;
  for (std::size_t j = 0; j < model.size(); ++j) {
    double gamma_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) gamma_sum += resp.gamma[i][j];
    next.weights[j] = gamma_sum / static_cast<double>(n);
    if (gamma_sum <= 1e-12) {
      ++local.frozen_components;  // keep the old parameters
      continue;
    }
    Vec mu(d, 0.0);
    Matrix m2(d, d);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = resp.gamma[i][j] / gamma_sum;
      for (std::size_t a = 0; a < d; ++a) {
        mu[a] += w * data[i][a];
        for (std::size_t b = 0; b < d; ++b) m2(a, b) += w * data[i][a] * data[i][b];
      }
    }
    Matrix cov = m2 - Matrix::outer(mu, mu);
    cov.symmetrize();
    auto f = SpdMatrix::try_factor(cov);
    if (!f) {
      ++local.jittered_components;
      const double floor = 1e-8 * cov.trace() / static_cast<double>(d);
      for (std::size_t a = 0; a < d; ++a) cov(a, a) += floor;
      f = SpdMatrix::try_factor(cov);
      if (!f)
        fail(errc::not_positive_definite,
             "em_step: component covariance not PD after jitter (component " +
                 std::to_string(j) + ")");
    }
    next.components[j] = StudentParams(model.components[j].nu(), std::move(mu), std::move(*f));
  }
  if (info) *info = local;
  return next;
}

double log_likelihood(const StudentParams& p, const std::vector<Vec>& data) {
  double s = 0.0;
  for (const Vec& x : data) s += p.log_density(x);
  return s;
}

double log_likelihood(const MixtureModel& m, const std::vector<Vec>& data) {
  double s = 0.0;
  for (const Vec& x : data) s += m.log_density(x);
  return s;
}

}  // namespace lef
