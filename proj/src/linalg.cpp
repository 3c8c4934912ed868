#include "qsub/linalg.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <optional>

namespace qsub {

Matrix kron_all(std::span<const Matrix> factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

Matrix embed_local(const Matrix& op, Index site, Index count) {
  if (site < 0 || site >= count) throw DimensionError("embed_local: site out of range");
  const Index d = op.rows();
  Index before = 1, after = 1;
  for (Index i = 0; i < site; ++i) before *= d;
  for (Index i = site + 1; i < count; ++i) after *= d;
  return kron(kron(Matrix::Identity(before, before), op), Matrix::Identity(after, after));
}

namespace {

// The tridiagonal QR in Eigen occasionally stalls on well-conditioned input.
// Retrying on Q M Q† for a fixed unitary Q (reversal, then the unitary DFT)
// changes the iteration without changing the spectrum; `q` is returned so the
// eigenvectors can be mapped back.
std::optional<Eigen::SelfAdjointEigenSolver<Matrix>> solve_hermitian(const Matrix& sym, int options,
                                                                     Matrix& q) {
  const Index n = sym.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, options);
  if (solver.info() == Eigen::Success) {
    q = Matrix::Identity(n, n);
    return solver;
  }
  std::vector<Matrix> transforms;
  transforms.push_back(Matrix::Identity(n, n).rowwise().reverse());
  Matrix dft(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index k = 0; k < n; ++k)
      dft(j, k) = std::polar(1.0 / std::sqrt(double(n)), 2.0 * std::numbers::pi * double(j * k % n) / double(n));
  transforms.push_back(std::move(dft));
  for (auto& t : transforms) {
    Matrix rotated = t * sym * t.adjoint();
    rotated = 0.5 * (rotated + rotated.adjoint());
    solver.compute(rotated, options);
    if (solver.info() == Eigen::Success) {
      q = std::move(t);
      return solver;
    }
  }
  return std::nullopt;
}

}  // namespace

HermEig herm_eig(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("herm_eig: matrix is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (!is_hermitian(m, 1e-8 * scale)) throw DimensionError("herm_eig: matrix is not Hermitian");
  const Matrix sym = 0.5 * (m + m.adjoint());
  Matrix q;
  const auto solver = solve_hermitian(sym, Eigen::ComputeEigenvectors, q);
  if (!solver) throw NumericalError("herm_eig: no convergence");
  // Eigen returns ascending order.
  HermEig out{solver->eigenvalues().reverse(), q.adjoint() * solver->eigenvectors().rowwise().reverse()};
  return out;
}

RealVector herm_eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("herm_eigenvalues: matrix is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (!is_hermitian(m, 1e-8 * scale)) throw DimensionError("herm_eigenvalues: not Hermitian");
  const Matrix sym = 0.5 * (m + m.adjoint());
  Matrix q;
  const auto solver = solve_hermitian(sym, Eigen::EigenvaluesOnly, q);
  if (!solver) throw NumericalError("herm_eigenvalues: no convergence");
  return solver->eigenvalues().reverse();
}

double trace_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (m.rows() == m.cols() && is_hermitian(m, 1e-13 * scale)) {
    return herm_eigenvalues(m).cwiseAbs().sum();
  }
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

namespace {

void check_layout(const Matrix& m, const Dims& dims, const char* who) {
  const Index total = product(dims);
  if (m.rows() != total || m.cols() != total)
    throw DimensionError(std::string(who) + ": dims product does not match matrix size");
}

// Digits of a flat index in the mixed radix given by `dims` (first most significant).
void split_index(Index flat, const Dims& dims, std::vector<Index>& digits) {
  for (Index k = static_cast<Index>(dims.size()) - 1; k >= 0; --k) {
    digits[k] = flat % dims[k];
    flat /= dims[k];
  }
}

Index join_index(const std::vector<Index>& digits, const Dims& dims) {
  Index flat = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) flat = flat * dims[k] + digits[k];
  return flat;
}

}  // namespace

Matrix partial_trace(const Matrix& m, const Dims& dims, const std::vector<Index>& keep) {
  check_layout(m, dims, "partial_trace");
  const Index n = static_cast<Index>(dims.size());
  std::vector<bool> kept(n, false);
  for (Index k : keep) {
    if (k < 0 || k >= n) throw DimensionError("partial_trace: subsystem index out of range");
    kept[k] = true;
  }
  Dims keep_dims, trace_dims;
  std::vector<Index> keep_idx, trace_idx;
  for (Index k = 0; k < n; ++k) {
    if (kept[k]) {
      keep_idx.push_back(k);
      keep_dims.push_back(dims[k]);
    } else {
      trace_idx.push_back(k);
      trace_dims.push_back(dims[k]);
    }
  }
  const Index dk = product(keep_dims), dt = product(trace_dims);
  Matrix out = Matrix::Zero(dk, dk);
  std::vector<Index> kd_r(keep_dims.size()), kd_c(keep_dims.size()), td(trace_dims.size());
  std::vector<Index> full_r(n), full_c(n);
  for (Index r = 0; r < dk; ++r) {
    split_index(r, keep_dims, kd_r);
    for (Index c = 0; c < dk; ++c) {
      split_index(c, keep_dims, kd_c);
      Complex acc = 0;
      for (Index t = 0; t < dt; ++t) {
        split_index(t, trace_dims, td);
        for (std::size_t k = 0; k < keep_idx.size(); ++k) {
          full_r[keep_idx[k]] = kd_r[k];
          full_c[keep_idx[k]] = kd_c[k];
        }
        for (std::size_t k = 0; k < trace_idx.size(); ++k) {
          full_r[trace_idx[k]] = td[k];
          full_c[trace_idx[k]] = td[k];
        }
        acc += m(join_index(full_r, dims), join_index(full_c, dims));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

Matrix partial_transpose(const Matrix& m, const Dims& dims, const std::vector<Index>& which) {
  check_layout(m, dims, "partial_transpose");
  const Index n = static_cast<Index>(dims.size());
  std::vector<bool> flip(n, false);
  for (Index k : which) {
    if (k < 0 || k >= n) throw DimensionError("partial_transpose: subsystem index out of range");
    flip[k] = true;
  }
  const Index total = m.rows();
  Matrix out(total, total);
  std::vector<Index> dr(n), dc(n);
  for (Index r = 0; r < total; ++r) {
    for (Index c = 0; c < total; ++c) {
      split_index(r, dims, dr);
      split_index(c, dims, dc);
      for (Index k = 0; k < n; ++k)
        if (flip[k]) std::swap(dr[k], dc[k]);
      out(join_index(dr, dims), join_index(dc, dims)) = m(r, c);
    }
  }
  return out;
}

namespace {

std::vector<Index> permutation_map(const Dims& dims, const std::vector<Index>& perm) {
  const Index n = static_cast<Index>(dims.size());
  if (static_cast<Index>(perm.size()) != n)
    throw DimensionError("permute_subsystems: permutation length mismatch");
  std::vector<Index> check(perm);
  std::sort(check.begin(), check.end());
  for (Index k = 0; k < n; ++k)
    if (check[k] != k) throw DimensionError("permute_subsystems: not a permutation");
  Dims out_dims(n);
  for (Index k = 0; k < n; ++k) out_dims[k] = dims[perm[k]];
  const Index total = product(dims);
  std::vector<Index> map(total);
  std::vector<Index> din(n), dout(n);
  for (Index flat = 0; flat < total; ++flat) {
    split_index(flat, dims, din);
    for (Index k = 0; k < n; ++k) dout[k] = din[perm[k]];
    map[flat] = join_index(dout, out_dims);
  }
  return map;
}

}  // namespace

Matrix permute_subsystems(const Matrix& m, const Dims& dims, const std::vector<Index>& perm) {
  check_layout(m, dims, "permute_subsystems");
  const auto map = permutation_map(dims, perm);
  const Index total = m.rows();
  Matrix out(total, total);
  for (Index r = 0; r < total; ++r)
    for (Index c = 0; c < total; ++c) out(map[r], map[c]) = m(r, c);
  return out;
}

Vector permute_subsystems(const Vector& v, const Dims& dims, const std::vector<Index>& perm) {
  if (v.size() != product(dims)) throw DimensionError("permute_subsystems: vector size mismatch");
  const auto map = permutation_map(dims, perm);
  Vector out(v.size());
  for (Index k = 0; k < v.size(); ++k) out(map[k]) = v(k);
  return out;
}

Matrix psd_sqrt(const Matrix& m) {
  const auto eig = herm_eig(m);
  const RealVector root = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * root.asDiagonal() * eig.vectors.adjoint();
}

double fidelity(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw DimensionError("fidelity: dimension mismatch");
  return trace_norm(psd_sqrt(rho) * psd_sqrt(sigma));
}

}  // namespace qsub
