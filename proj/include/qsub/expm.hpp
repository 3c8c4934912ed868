#pragma once

#include "qsub/linalg.hpp"

#include <array>
#include <cmath>

namespace qsub {

inline constexpr double kExpmMaxNorm = 1e4;

namespace detail {

// Degree-m diagonal Padé numerator/denominator split into even (V) and odd (U)
// parts: r_m(A) = (V - U)^{-1} (V + U).
template <typename MatrixType>
void pade_terms(const MatrixType& a, int degree, MatrixType& u, MatrixType& v) {
  using RealScalar = typename Eigen::NumTraits<typename MatrixType::Scalar>::Real;
  const Index n = a.rows();
  const MatrixType ident = MatrixType::Identity(n, n);
  const MatrixType a2 = a * a;
  switch (degree) {
    case 3: {
      constexpr std::array<RealScalar, 4> b{120., 60., 12., 1.};
      u.noalias() = a * (b[3] * a2 + b[1] * ident);
      v = b[2] * a2 + b[0] * ident;
      return;
    }
    case 5: {
      constexpr std::array<RealScalar, 6> b{30240., 15120., 3360., 420., 30., 1.};
      const MatrixType a4 = a2 * a2;
      u.noalias() = a * (b[5] * a4 + b[3] * a2 + b[1] * ident);
      v = b[4] * a4 + b[2] * a2 + b[0] * ident;
      return;
    }
    case 7: {
      constexpr std::array<RealScalar, 8> b{17297280., 8648640., 1995840., 277200.,
                                            25200.,    1512.,    56.,      1.};
      const MatrixType a4 = a2 * a2;
      const MatrixType a6 = a4 * a2;
      u.noalias() = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
      v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
      return;
    }
    case 9: {
      constexpr std::array<RealScalar, 10> b{17643225600., 8821612800., 2075673600., 302702400.,
                                             30270240.,    2162160.,    110880.,     3960.,
                                             90.,          1.};
      const MatrixType a4 = a2 * a2;
      const MatrixType a6 = a4 * a2;
      const MatrixType a8 = a6 * a2;
      u.noalias() = a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
      v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
      return;
    }
    default: {
      constexpr std::array<RealScalar, 14> b{
          64764752532480000., 32382376266240000., 7771770303897600., 1187353796428800.,
          129060195264000.,   10559470521600.,    670442572800.,    33522128640.,
          1323241920.,        40840800.,          960960.,          16380.,
          182.,               1.};
      const MatrixType a4 = a2 * a2;
      const MatrixType a6 = a4 * a2;
      MatrixType tmp = b[13] * a6 + b[11] * a4 + b[9] * a2;
      u.noalias() = a6 * tmp;
      u += b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident;
      tmp = u;
      u.noalias() = a * tmp;
      tmp = b[12] * a6 + b[10] * a4 + b[8] * a2;
      v.noalias() = a6 * tmp;
      v += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
      return;
    }
  }
}

}  // namespace detail

/// Matrix exponential by scaling and squaring with a diagonal Padé
/// approximant whose degree is picked from the 1-norm (Higham 2005 thresholds).
template <typename Derived>
typename Derived::PlainObject expm(const Eigen::MatrixBase<Derived>& m) {
  using MatrixType = typename Derived::PlainObject;
  if (m.rows() != m.cols()) throw DimensionError("expm: matrix is not square");
  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(norm1)) throw NumericalError("expm: non-finite input");
  if (norm1 > kExpmMaxNorm) throw NumericalError("expm: norm exceeds overflow guard");

  const Index n = m.rows();
  if (n == 0) return MatrixType(0, 0);

  constexpr std::array<double, 4> theta{1.495585217958292e-2, 2.539398330063230e-1,
                                        9.504178996162932e-1, 2.097847961257068e0};
  constexpr std::array<int, 4> degrees{3, 5, 7, 9};
  constexpr double theta13 = 5.371920351148152;

  MatrixType u(n, n), v(n, n);
  int squarings = 0;
  MatrixType a = m;
  bool done = false;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (norm1 <= theta[i]) {
      detail::pade_terms(a, degrees[i], u, v);
      done = true;
      break;
    }
  }
  if (!done) {
    if (norm1 > theta13) {
      squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / theta13))));
      a /= std::ldexp(1.0, squarings);
    }
    detail::pade_terms(a, 13, u, v);
  }
  MatrixType result = (v - u).partialPivLu().solve(v + u);
  MatrixType tmp(n, n);
  for (int s = 0; s < squarings; ++s) {
    tmp.noalias() = result * result;
    result.swap(tmp);
  }
  return result;
}

/// exp(t·A)·B computed on the smallest A-invariant subspace containing the
/// columns of B. The subspace is found by Arnoldi-style orthogonalised
/// expansion; the exponential is then taken of the compressed generator.
struct ExpmActionResult {
  Matrix value;
  Index subspace_dim = 0;
  double invariance_residual = 0.0;
};

ExpmActionResult expm_action(const Matrix& a, const Matrix& b, double t);

}  // namespace qsub
