#include "qsub/states.hpp"

#include <cmath>

namespace qsub {

PureState::PureState(Vector amplitudes, double tol) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw DimensionError("PureState: empty vector");
  if (!amplitudes_.allFinite()) throw NumericalError("PureState: non-finite amplitude");
  if (std::abs(amplitudes_.norm() - 1.0) > tol) throw NumericalError("PureState: not normalised");
}

PureState PureState::basis(Index d, Index k) {
  if (k < 0 || k >= d) throw DimensionError("PureState::basis: index out of range");
  Vector v = Vector::Zero(d);
  v(k) = 1.0;
  return PureState(std::move(v));
}

PureState PureState::random(Index d, Rng& rng) { return PureState(random_pure_vector(d, rng)); }

DensityMatrix::DensityMatrix(const Matrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) throw DimensionError("DensityMatrix: not square");
  if (!m.allFinite()) throw NumericalError("DensityMatrix: non-finite entry");
  if (!is_hermitian(m, tol)) throw NumericalError("DensityMatrix: not Hermitian");
  m_ = 0.5 * (m + m.adjoint());
  if (std::abs(m_.trace().real() - 1.0) > tol) throw NumericalError("DensityMatrix: trace is not 1");
  if (herm_eigenvalues(m_).minCoeff() < -tol)
    throw NumericalError("DensityMatrix: negative eigenvalue");
}

DensityMatrix::DensityMatrix(const PureState& psi) : m_(psi.projector()) {}

DensityMatrix DensityMatrix::maximally_mixed(Index d) {
  return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d));
}

Vector max_entangled_vector(Index d) {
  Vector v = Vector::Zero(d * d);
  for (Index i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return v;
}

DensityMatrix DensityMatrix::max_entangled(Index d) {
  return DensityMatrix(PureState(max_entangled_vector(d)));
}

DensityMatrix DensityMatrix::diagonal(const RealVector& probabilities) {
  return DensityMatrix(Matrix(probabilities.cast<Complex>().asDiagonal()));
}

DensityMatrix DensityMatrix::random(Index d, Rng& rng) { return random(d, d, rng); }

DensityMatrix DensityMatrix::random(Index d, Index rank, Rng& rng) {
  if (rank < 1 || rank > d) throw DimensionError("DensityMatrix::random: invalid rank");
  const Matrix g = ginibre(d, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho);
}

}  // namespace qsub
