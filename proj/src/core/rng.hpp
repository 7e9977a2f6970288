#pragma once

#include <array>
#include <cstdint>

#include "core/linalg.hpp"

namespace lef {

// Philox4x32-10 block function (Salmon et al., counter-based).  Pure: the
// same (counter, key) always yields the same block, on any platform.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Deterministic random stream keyed by (seed, stream).  Streams with
// different ids are independent; copies advance independently, so a stream
// can be handed to a worker and replayed exactly.
class SeededRng {
public:
  SeededRng() : SeededRng(0, 0) {}
  SeededRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  // Derived stream for a sub-task (replicate, iteration, ...).
  SeededRng derive(std::uint64_t substream) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  double uniform();                       // (0, 1), never exactly 0 or 1
  double uniform(double lo, double hi);
  double normal();                        // standard normal, Box-Muller
  Vec normal_vec(std::size_t d);
  double gamma(double shape);             // Gamma(shape, 1), Marsaglia-Tsang
  double chi_square(double dof);

private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int block_pos_ = 4;  // exhausted
  bool have_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

// Random SPD matrix Q D Q^T with prescribed condition number kappa >= 1:
// Q is the sign-normalized QR factor of a standard Gaussian matrix and D has
// geometrically spaced eigenvalues from 1 to kappa.
SpdMatrix spd_with_condition(std::size_t d, double kappa, SeededRng& rng);

}  // namespace lef
