#pragma once

#include "qsub/linalg.hpp"
#include "qsub/random.hpp"

namespace qsub {

class PureState {
 public:
  explicit PureState(Vector amplitudes, double tol = kStateTol);

  static PureState basis(Index d, Index k);
  static PureState random(Index d, Rng& rng);

  Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  Vector amplitudes_;
};

/// Positive semidefinite, unit-trace, Hermitian matrix. The constructor
/// validates and symmetrises the input.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Matrix& m, double tol = kStateTol);
  DensityMatrix(const PureState& psi);  // NOLINT(google-explicit-constructor)

  static DensityMatrix maximally_mixed(Index d);
  /// Maximally entangled ω on C^d ⊗ C^d.
  static DensityMatrix max_entangled(Index d);
  static DensityMatrix diagonal(const RealVector& probabilities);
  /// Hilbert–Schmidt random state GG†/tr(GG†).
  static DensityMatrix random(Index d, Rng& rng);
  /// Random state of the given rank (rank ≤ d).
  static DensityMatrix random(Index d, Index rank, Rng& rng);

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

inline DensityMatrix random_density(Index d, Rng& rng) { return DensityMatrix::random(d, rng); }

Vector max_entangled_vector(Index d);

inline DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.matrix(), b.matrix()));
}

inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return 0.5 * trace_norm(a.matrix() - b.matrix());
}

}  // namespace qsub
