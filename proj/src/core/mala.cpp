#include "core/mala.hpp"

#include <cmath>

#include "core/special.hpp"

namespace lef {

double default_step(std::size_t d) {
  require(d >= 1, errc::invalid_argument, "default_step: d must be >= 1");
  return 0.574 * 0.574 / std::cbrt(static_cast<double>(d));
}

MalaState mala_init(const TargetOracle& oracle, double alpha, Vec x0, SpdMatrix scale,
                    double step) {
  require(alpha > 0.0, errc::invalid_argument, "mala: alpha must be positive");
  require(step > 0.0, errc::invalid_argument, "mala: step must be positive");
  require(x0.size() == oracle.dim && scale.dim() == oracle.dim, errc::dimension_mismatch,
          "mala: dimension mismatch");
  MalaState s;
  s.alpha = alpha;
  s.step = step;
  s.scale = std::move(scale);
  s.log_target = alpha * oracle.log_unnormalized(x0);
  s.grad = oracle.grad_log_unnormalized(x0);
  s.x = std::move(x0);
  return s;
}

namespace {

Vec drift_mean(const MalaState& s, const Vec& x, const Vec& grad) {
  // x + (step/2) alpha A grad
  Vec ag = s.scale.dense() * grad;
  Vec m(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) m[i] = x[i] + 0.5 * s.step * s.alpha * ag[i];
  return m;
}

// Quadratic part of log N(y; m, step * A); the normalizing constant is the
// same for both kernel evaluations in the ratio and cancels.
double kernel_quad(const MalaState& s, const Vec& y, const Vec& m) {
  Vec r(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) r[i] = y[i] - m[i];
  return -0.5 * s.scale.quad_form(r) / s.step;
}

bool finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

void mala_step(MalaState& state, const TargetOracle& oracle, SeededRng& rng) {
  ++state.proposed_count;
  const Vec mean_x = drift_mean(state, state.x, state.grad);

  Vec z = rng.normal_vec(state.x.size());
  Vec noise = state.scale.lower_times(z);
  Vec y(state.x.size());
  const double sd = std::sqrt(state.step);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = mean_x[i] + sd * noise[i];

  // Always consume one uniform for the accept decision so the stream layout
  // does not depend on intermediate finiteness.
  const double u = rng.uniform();

  if (!finite(y) || !finite(mean_x)) return;  // rejected with diagnostic counters only
  const double log_target_y = state.alpha * oracle.log_unnormalized(y);
  if (!std::isfinite(log_target_y)) return;
  const Vec grad_y = oracle.grad_log_unnormalized(y);
  if (!finite(grad_y)) return;

  const Vec mean_y = drift_mean(state, y, grad_y);
  const double log_accept = log_target_y - state.log_target + kernel_quad(state, state.x, mean_y) -
                            kernel_quad(state, y, mean_x);
  if (std::log(u) < log_accept) {
    state.x = y;
    state.log_target = log_target_y;
    state.grad = grad_y;
    ++state.accepted_count;
  }
}

MalaChainResult mala_chain(const TargetOracle& oracle, double alpha, std::size_t n_steps,
                           const Vec& x0, const SpdMatrix& scale, double step, SeededRng& rng,
                           std::size_t burn_in) {
  require(n_steps >= 1, errc::invalid_argument, "mala_chain: n_steps must be >= 1");
  MalaState s = mala_init(oracle, alpha, x0, scale, step);
  MalaChainResult out;
  out.states.reserve(n_steps);
  for (std::size_t k = 0; k < burn_in + n_steps; ++k) {
    mala_step(s, oracle, rng);
    if (k >= burn_in) out.states.push_back(s.x);
  }
  out.acceptance_rate = s.acceptance_rate();
  return out;
}

}  // namespace lef
