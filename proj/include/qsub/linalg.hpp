#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsub {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;
using Dims = std::vector<Index>;

/// Thrown when operand shapes or subsystem layouts do not fit together.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical routine fails (non-convergence, overflow guard,
/// invariant violated beyond tolerance).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kStateTol = 1e-9;
inline constexpr double kChannelTol = 1e-8;

inline Index product(std::span<const Index> dims) {
  Index p = 1;
  for (Index d : dims) p *= d;
  return p;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

/// Kronecker product a ⊗ b with the first factor most significant.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Out = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Out out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix kron_all(std::span<const Matrix> factors);

/// Operator acting as `op` on subsystem `site` of `count` copies of
/// dimension `d`, identity elsewhere.
Matrix embed_local(const Matrix& op, Index site, Index count);

/// Hermitian eigendecomposition, eigenvalues in descending order.
struct HermEig {
  RealVector values;
  Matrix vectors;
};

HermEig herm_eig(const Matrix& m);
RealVector herm_eigenvalues(const Matrix& m);

/// Sum of singular values.
double trace_norm(const Matrix& m);

/// Partial trace keeping the listed subsystems (in their original order).
Matrix partial_trace(const Matrix& m, const Dims& dims, const std::vector<Index>& keep);

/// Transpose on the listed subsystems.
Matrix partial_transpose(const Matrix& m, const Dims& dims, const std::vector<Index>& which);

/// Reorders tensor factors: output factor k is input factor perm[k].
Matrix permute_subsystems(const Matrix& m, const Dims& dims, const std::vector<Index>& perm);
Vector permute_subsystems(const Vector& v, const Dims& dims, const std::vector<Index>& perm);

/// Positive square root of a positive semidefinite Hermitian matrix.
Matrix psd_sqrt(const Matrix& m);

/// Root fidelity ‖√ρ √σ‖₁.
double fidelity(const Matrix& rho, const Matrix& sigma);

/// vec(X) in column-stacking order, and its inverse.
inline Vector vec(const Matrix& x) { return Eigen::Map<const Vector>(x.data(), x.size()); }
inline Matrix unvec(const Vector& v, Index rows) {
  return Eigen::Map<const Matrix>(v.data(), rows, v.size() / rows);
}

}  // namespace qsub
