#include "qsub/expm.hpp"

#include <cmath>

namespace qsub {

namespace {

// Orthogonalises w against the first `count` columns of q (two passes).
void orthogonalise(const Matrix& q, Index count, Vector& w) {
  for (int pass = 0; pass < 2; ++pass) {
    if (count == 0) return;
    const Vector coeffs = q.leftCols(count).adjoint() * w;
    w.noalias() -= q.leftCols(count) * coeffs;
  }
}

}  // namespace

ExpmActionResult expm_action(const Matrix& a, const Matrix& b, double t) {
  if (a.rows() != a.cols()) throw DimensionError("expm_action: generator is not square");
  if (b.rows() != a.rows()) throw DimensionError("expm_action: operand row mismatch");
  const Index n = a.rows();
  const double a_scale = std::max(1.0, a.cwiseAbs().colwise().sum().maxCoeff());
  const double b_scale = std::max(1e-300, b.cwiseAbs().maxCoeff());
  constexpr double kDrop = 1e-11;

  Matrix q(n, n);
  Index dim = 0;
  auto try_append = [&](Vector w, double reference) {
    if (dim == n) return;
    orthogonalise(q, dim, w);
    const double norm = w.norm();
    if (norm > kDrop * reference) {
      q.col(dim++) = w / norm;
    }
  };

  for (Index j = 0; j < b.cols(); ++j) try_append(b.col(j), b_scale * std::sqrt(double(n)));
  for (Index j = 0; j < dim; ++j) {
    Vector w = a * q.col(j);
    try_append(std::move(w), a_scale);
  }

  ExpmActionResult out;
  out.subspace_dim = dim;
  if (dim == 0) {
    out.value = Matrix::Zero(b.rows(), b.cols());
    return out;
  }
  const auto basis = q.leftCols(dim);
  const Matrix aq = a * basis;
  const Matrix h = basis.adjoint() * aq;
  out.invariance_residual = (aq - basis * h).norm() / a_scale;
  if (out.invariance_residual > 1e-9)
    throw NumericalError("expm_action: Krylov closure is not invariant");
  const Matrix th = t * h;
  out.value = basis * (expm(th) * (basis.adjoint() * b));
  return out;
}

}  // namespace qsub
