#pragma once

#include <functional>

#include "core/linalg.hpp"
#include "core/rng.hpp"

namespace lef {

// Unnormalized log-density oracle: log pi~ and its gradient.  The chain
// targets the escort pi^(alpha), whose unnormalized log-density is
// alpha * log pi~.
struct TargetOracle {
  std::function<double(const Vec&)> log_unnormalized;
  std::function<Vec(const Vec&)> grad_log_unnormalized;
  std::size_t dim = 0;
};

// Typical Langevin step size 0.574^2 / d^(1/3).
double default_step(std::size_t d);

struct MalaState {
  Vec x;
  double alpha = 1.0;     // escort exponent
  double step = 0.0;      // sigma_d^2
  SpdMatrix scale;        // A
  std::uint64_t accepted_count = 0;
  std::uint64_t proposed_count = 0;
  double log_target = 0.0;  // alpha * log pi~(x), cached
  Vec grad;                 // grad log pi~(x), cached

  double acceptance_rate() const {
    return proposed_count == 0 ? 0.0
                               : static_cast<double>(accepted_count) /
                                     static_cast<double>(proposed_count);
  }
};

MalaState mala_init(const TargetOracle& oracle, double alpha, Vec x0, SpdMatrix scale,
                    double step);

// One proposal/accept-reject step.  Proposal:
//   y ~ N(x + (step/2) alpha A grad log pi~(x), step A)
// accepted with the Metropolis-Hastings ratio for the escort target
// pi~^alpha.  Non-finite proposals count as rejections.
void mala_step(MalaState& state, const TargetOracle& oracle, SeededRng& rng);

struct MalaChainResult {
  std::vector<Vec> states;  // post accept/reject, one per retained step
  double acceptance_rate = 0.0;
};

// Runs burn_in + n_steps steps and returns the last n_steps states; burn_in
// defaults to 0 so averages start from the very first sample.
MalaChainResult mala_chain(const TargetOracle& oracle, double alpha, std::size_t n_steps,
                           const Vec& x0, const SpdMatrix& scale, double step, SeededRng& rng,
                           std::size_t burn_in = 0);

}  // namespace lef
