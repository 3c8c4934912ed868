#include "qsub/channel.hpp"

#include <cmath>

namespace qsub {

Isometry::Isometry(Matrix v, double tol) : v_(std::move(v)) {
  if (v_.rows() < v_.cols()) throw DimensionError("Isometry: d_to < d_from");
  const Matrix gram = v_.adjoint() * v_;
  if ((gram - Matrix::Identity(v_.cols(), v_.cols())).cwiseAbs().maxCoeff() > tol)
    throw NumericalError("Isometry: V†V differs from identity");
}

// --- representation conversions -------------------------------------------

Matrix conjugation_superop(const Matrix& k) { return kron(k.conjugate(), k); }

Matrix kraus_to_superop(const std::vector<Matrix>& kraus) {
  if (kraus.empty()) throw DimensionError("kraus_to_superop: no Kraus operators");
  const Index d_out = kraus.front().rows(), d_in = kraus.front().cols();
  Matrix s = Matrix::Zero(d_out * d_out, d_in * d_in);
  for (const auto& k : kraus) s += conjugation_superop(k);
  return s;
}

Matrix kraus_to_choi(const std::vector<Matrix>& kraus) {
  if (kraus.empty()) throw DimensionError("kraus_to_choi: no Kraus operators");
  const Index d_out = kraus.front().rows(), d_in = kraus.front().cols();
  Matrix j = Matrix::Zero(d_in * d_out, d_in * d_out);
  for (const auto& k : kraus) {
    const Vector w = vec(k);  // index i·d_out + a holds K(a, i)
    j.noalias() += w * w.adjoint();
  }
  return j / static_cast<double>(d_in);
}

Matrix superop_to_choi(const Matrix& superop, Index d_in, Index d_out) {
  if (superop.rows() != d_out * d_out || superop.cols() != d_in * d_in)
    throw DimensionError("superop_to_choi: shape mismatch");
  Matrix j(d_in * d_out, d_in * d_out);
  for (Index i = 0; i < d_in; ++i)
    for (Index jj = 0; jj < d_in; ++jj)
      for (Index a = 0; a < d_out; ++a)
        for (Index b = 0; b < d_out; ++b)
          j(i * d_out + a, jj * d_out + b) = superop(a + b * d_out, i + jj * d_in);
  return j / static_cast<double>(d_in);
}

Matrix choi_to_superop(const Matrix& choi, Index d_in, Index d_out) {
  if (choi.rows() != d_in * d_out || choi.cols() != d_in * d_out)
    throw DimensionError("choi_to_superop: shape mismatch");
  Matrix s(d_out * d_out, d_in * d_in);
  for (Index i = 0; i < d_in; ++i)
    for (Index jj = 0; jj < d_in; ++jj)
      for (Index a = 0; a < d_out; ++a)
        for (Index b = 0; b < d_out; ++b)
          s(a + b * d_out, i + jj * d_in) = choi(i * d_out + a, jj * d_out + b);
  return s * static_cast<double>(d_in);
}

std::vector<Matrix> choi_to_kraus(const Matrix& choi, Index d_in, Index d_out, double cutoff,
                                  double tol) {
  if (choi.rows() != d_in * d_out || choi.cols() != d_in * d_out)
    throw DimensionError("choi_to_kraus: shape mismatch");
  const auto eig = herm_eig(choi);
  if (eig.values.minCoeff() < -tol) throw NumericalError("choi_to_kraus: Choi matrix is not PSD");
  std::vector<Matrix> kraus;
  for (Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) <= cutoff) continue;
    const double scale = std::sqrt(static_cast<double>(d_in) * eig.values(k));
    kraus.push_back(scale * unvec(eig.vectors.col(k), d_out));
  }
  if (kraus.empty()) throw NumericalError("choi_to_kraus: Choi matrix vanishes");
  return kraus;
}

// --- QuantumChannel ---------------------------------------------------------

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus, Index d_in, Index d_out)
    : d_in_(d_in), d_out_(d_out), kraus_(std::move(kraus)) {
  if (d_in_ * d_out_ <= kCacheLimit) {
    choi_ = kraus_to_choi(kraus_);
    superop_ = kraus_to_superop(kraus_);
  }
}

QuantumChannel QuantumChannel::from_kraus(std::vector<Matrix> kraus, double tol) {
  if (kraus.empty()) throw DimensionError("QuantumChannel: no Kraus operators");
  const Index d_out = kraus.front().rows(), d_in = kraus.front().cols();
  Matrix sum = Matrix::Zero(d_in, d_in);
  for (const auto& k : kraus) {
    if (k.rows() != d_out || k.cols() != d_in)
      throw DimensionError("QuantumChannel: Kraus operators of different shapes");
    if (!k.allFinite()) throw NumericalError("QuantumChannel: non-finite Kraus entry");
    sum.noalias() += k.adjoint() * k;
  }
  if ((sum - Matrix::Identity(d_in, d_in)).cwiseAbs().maxCoeff() > tol)
    throw NumericalError("QuantumChannel: Kraus operators are not trace preserving");
  return QuantumChannel(std::move(kraus), d_in, d_out);
}

QuantumChannel QuantumChannel::from_choi(const Matrix& choi, Index d_in, Index d_out, double tol) {
  auto kraus = choi_to_kraus(choi, d_in, d_out, 1e-10 / static_cast<double>(d_in * d_out), tol);
  const Matrix marginal = partial_trace(choi, {d_in, d_out}, {0});
  if ((marginal - Matrix::Identity(d_in, d_in) / static_cast<double>(d_in)).cwiseAbs().maxCoeff() >
      tol)
    throw NumericalError("QuantumChannel: Choi marginal is not I/d_in");
  return from_kraus(std::move(kraus), 10 * tol);
}

QuantumChannel QuantumChannel::from_superop(const Matrix& superop, Index d_in, Index d_out,
                                            double tol) {
  return from_choi(superop_to_choi(superop, d_in, d_out), d_in, d_out, tol);
}

QuantumChannel QuantumChannel::identity(Index d) { return unitary(Matrix::Identity(d, d)); }

QuantumChannel QuantumChannel::unitary(const Matrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("unitary channel: matrix is not square");
  return from_kraus({u});
}

QuantumChannel QuantumChannel::depolarizing(double lambda, Index d) {
  const double lo = -1.0 / static_cast<double>(d * d - 1);
  if (lambda < lo - 1e-12 || lambda > 1.0 + 1e-12)
    throw std::invalid_argument("depolarizing: λ outside the CPTP range");
  const Vector w = max_entangled_vector(d);
  const Matrix choi = lambda * (w * w.adjoint()) +
                      (1.0 - lambda) * Matrix::Identity(d * d, d * d) / static_cast<double>(d * d);
  return from_choi(choi, d, d);
}

QuantumChannel QuantumChannel::completely_depolarizing(Index d) {
  return replacement(DensityMatrix::maximally_mixed(d), d);
}

QuantumChannel QuantumChannel::pauli_depolarizing() {
  Matrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  const double s = 1.0 / std::sqrt(3.0);
  return from_kraus({s * x, s * y, s * z});
}

QuantumChannel QuantumChannel::amplitude_damping(double gamma) {
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("amplitude_damping: γ ∉ [0,1]");
  Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  return from_kraus({k0, k1});
}

QuantumChannel QuantumChannel::replacement(const DensityMatrix& sigma, Index d_in) {
  const auto eig = herm_eig(sigma.matrix());
  const Index d_out = sigma.dim();
  std::vector<Matrix> kraus;
  for (Index j = 0; j < d_out; ++j) {
    if (eig.values(j) <= 1e-15) continue;
    for (Index i = 0; i < d_in; ++i) {
      Matrix k = Matrix::Zero(d_out, d_in);
      k.col(i) = std::sqrt(eig.values(j)) * eig.vectors.col(j);
      kraus.push_back(std::move(k));
    }
  }
  return from_kraus(std::move(kraus));
}

QuantumChannel QuantumChannel::random(Index d_in, Index d_out, Index n_kraus, Rng& rng) {
  const Matrix v = haar_isometry(d_in, d_out * n_kraus, rng);
  std::vector<Matrix> kraus(n_kraus, Matrix(d_out, d_in));
  for (Index k = 0; k < n_kraus; ++k)
    for (Index a = 0; a < d_out; ++a) kraus[k].row(a) = v.row(a * n_kraus + k);
  return from_kraus(std::move(kraus));
}

Matrix QuantumChannel::choi() const { return choi_ ? *choi_ : kraus_to_choi(kraus_); }

Matrix QuantumChannel::superoperator() const {
  return superop_ ? *superop_ : kraus_to_superop(kraus_);
}

Matrix QuantumChannel::apply(const Matrix& rho) const {
  if (rho.rows() != d_in_ || rho.cols() != d_in_) throw DimensionError("apply: dimension mismatch");
  Matrix out = Matrix::Zero(d_out_, d_out_);
  for (const auto& k : kraus_) out.noalias() += k * rho * k.adjoint();
  return out;
}

DensityMatrix QuantumChannel::operator()(const DensityMatrix& rho) const {
  return DensityMatrix(apply(rho.matrix()));
}

DensityMatrix apply(const QuantumChannel& t, const DensityMatrix& rho) { return t(rho); }

Matrix apply_local(const QuantumChannel& t, const Matrix& rho, Index d_ref) {
  if (rho.rows() != d_ref * t.d_in() || rho.cols() != rho.rows())
    throw DimensionError("apply_local: dimension mismatch");
  const Matrix ident = Matrix::Identity(d_ref, d_ref);
  Matrix out = Matrix::Zero(d_ref * t.d_out(), d_ref * t.d_out());
  for (const auto& k : t.kraus()) {
    const Matrix big = kron(ident, k);
    out.noalias() += big * rho * big.adjoint();
  }
  return out;
}

// --- dilations and combinations ---------------------------------------------

Isometry stinespring(const QuantumChannel& t) {
  const auto& kraus = t.kraus();
  const Index n_env = static_cast<Index>(kraus.size());
  Matrix v(t.d_out() * n_env, t.d_in());
  for (Index a = 0; a < t.d_out(); ++a)
    for (Index k = 0; k < n_env; ++k) v.row(a * n_env + k) = kraus[k].row(a);
  return Isometry(std::move(v), 1e-8);
}

QuantumChannel complementary(const QuantumChannel& t) {
  const auto& kraus = t.kraus();
  const Index n_env = static_cast<Index>(kraus.size());
  std::vector<Matrix> out(t.d_out(), Matrix(n_env, t.d_in()));
  for (Index b = 0; b < t.d_out(); ++b)
    for (Index k = 0; k < n_env; ++k) out[b].row(k) = kraus[k].row(b);
  return QuantumChannel::from_kraus(std::move(out));
}

namespace {

// Replaces an over-long Kraus list by the minimal one from the Choi matrix.
QuantumChannel compact(std::vector<Matrix> kraus) {
  const Index d_out = kraus.front().rows(), d_in = kraus.front().cols();
  if (static_cast<Index>(kraus.size()) > d_in * d_out && d_in * d_out <= QuantumChannel::kCacheLimit)
    return QuantumChannel::from_choi(kraus_to_choi(kraus), d_in, d_out);
  return QuantumChannel::from_kraus(std::move(kraus));
}

}  // namespace

QuantumChannel compose(const QuantumChannel& s, const QuantumChannel& t) {
  if (s.d_in() != t.d_out()) throw DimensionError("compose: dimension mismatch");
  std::vector<Matrix> kraus;
  kraus.reserve(s.kraus().size() * t.kraus().size());
  for (const auto& a : s.kraus())
    for (const auto& b : t.kraus()) kraus.push_back(a * b);
  return compact(std::move(kraus));
}

QuantumChannel tensor(const QuantumChannel& s, const QuantumChannel& t) {
  std::vector<Matrix> kraus;
  kraus.reserve(s.kraus().size() * t.kraus().size());
  for (const auto& a : s.kraus())
    for (const auto& b : t.kraus()) kraus.push_back(kron(a, b));
  return compact(std::move(kraus));
}

QuantumChannel tensor_power(const QuantumChannel& t, Index m) {
  if (m < 1) throw std::invalid_argument("tensor_power: m must be ≥ 1");
  QuantumChannel out = t;
  for (Index k = 1; k < m; ++k) out = tensor(out, t);
  return out;
}

QuantumChannel mix(double lambda, const QuantumChannel& s, const QuantumChannel& t) {
  if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("mix: λ ∉ [0,1]");
  if (s.d_in() != t.d_in() || s.d_out() != t.d_out()) throw DimensionError("mix: dimension mismatch");
  std::vector<Matrix> kraus;
  for (const auto& k : s.kraus()) kraus.push_back(std::sqrt(lambda) * k);
  for (const auto& k : t.kraus()) kraus.push_back(std::sqrt(1.0 - lambda) * k);
  return compact(std::move(kraus));
}

UnitaryDilation isometry_to_unitary(const Isometry& iso) {
  const Index n = iso.d_from(), total = iso.d_to();
  if (total % n != 0) throw DimensionError("isometry_to_unitary: d_to not divisible by d_from");
  const Index k = total / n;
  const Matrix& v = iso.matrix();

  // Orthonormal system {V|i⟩}, completed by Gram–Schmidt over the standard basis.
  Matrix basis(total, total);
  basis.leftCols(n) = v;
  Index filled = n;
  for (Index e = 0; e < total && filled < total; ++e) {
    Vector w = Vector::Unit(total, e);
    for (int pass = 0; pass < 2; ++pass) w -= basis.leftCols(filled) * (basis.leftCols(filled).adjoint() * w);
    const double norm = w.norm();
    if (norm > 1e-8) basis.col(filled++) = w / norm;
  }
  if (filled != total) throw NumericalError("isometry_to_unitary: completion failed");

  // Column i·k + 0 (= |i⟩⊗|0⟩) carries V|i⟩; the remaining columns take the
  // completion vectors in order.
  Matrix u(total, total);
  Index next = n;
  for (Index col = 0; col < total; ++col) {
    if (col % k == 0) {
      u.col(col) = v.col(col / k);
    } else {
      u.col(col) = basis.col(next++);
    }
  }
  return {std::move(u), PureState::basis(k, 0)};
}

double entanglement_fidelity(const QuantumChannel& t) {
  if (t.d_in() != t.d_out()) throw DimensionError("entanglement_fidelity: channel is not square");
  double acc = 0.0;
  for (const auto& k : t.kraus()) acc += std::norm(k.trace());
  return acc / static_cast<double>(t.d_in() * t.d_in());
}

DiamondBounds diamond_distance_bounds(const QuantumChannel& s, const QuantumChannel& t) {
  if (s.d_in() != t.d_in() || s.d_out() != t.d_out())
    throw DimensionError("diamond_distance_bounds: dimension mismatch");
  const double lower = trace_norm(s.choi() - t.choi());
  return {lower, static_cast<double>(s.d_in()) * lower};
}

double ppt_min_eigenvalue(const QuantumChannel& t) {
  const Matrix pt = partial_transpose(t.choi(), {t.d_in(), t.d_out()}, {0});
  return herm_eigenvalues(pt).minCoeff();
}

bool is_ppt_channel(const QuantumChannel& t, double tol) { return ppt_min_eigenvalue(t) >= -tol; }

}  // namespace qsub
