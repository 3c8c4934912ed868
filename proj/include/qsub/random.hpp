#pragma once

#include "qsub/linalg.hpp"

#include <cstdint>

namespace qsub {

/// Counter-based generator: the n-th draw is a pure function of (seed, n), so
/// substreams and replays are exact.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double normal();
  Complex complex_normal();

  /// Independent stream keyed by `index`, used for per-sample parallel work.
  Rng substream(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// d×d matrix with i.i.d. standard complex Gaussian entries.
Matrix ginibre(Index rows, Index cols, Rng& rng);
Matrix haar_unitary(Index d, Rng& rng);
/// Haar-random isometry C^{d_from} → C^{d_to}.
Matrix haar_isometry(Index d_from, Index d_to, Rng& rng);
Vector random_pure_vector(Index d, Rng& rng);
Matrix random_hermitian(Index d, Rng& rng);

}  // namespace qsub
