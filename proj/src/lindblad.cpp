#include "qsub/lindblad.hpp"

#include "qsub/expm.hpp"

#include <cmath>

namespace qsub {

Matrix liouvillian_superop(const Matrix& h, const std::vector<Matrix>& jump_ops) {
  const Index d = h.rows();
  const Matrix ident = Matrix::Identity(d, d);
  Matrix s = Complex(0, -1) * (kron(ident, h) - kron(Matrix(h.transpose()), ident));
  for (const auto& a : jump_ops) {
    const Matrix ada = a.adjoint() * a;
    s += kron(Matrix(a.conjugate()), a);
    s -= 0.5 * kron(ident, ada);
    s -= 0.5 * kron(Matrix(ada.transpose()), ident);
  }
  return s;
}

Liouvillian::Liouvillian(Matrix h, std::vector<Matrix> ops) : h_(std::move(h)), ops_(std::move(ops)) {
  if (dim() <= kCacheDim) superop_ = liouvillian_superop(h_, ops_);
}

Liouvillian Liouvillian::build(Matrix h, std::vector<Matrix> jump_ops, double tol) {
  if (h.rows() != h.cols() || h.rows() == 0) throw DimensionError("Liouvillian: H is not square");
  if (!h.allFinite()) throw NumericalError("Liouvillian: non-finite H");
  if (!is_hermitian(h, tol)) throw std::invalid_argument("Liouvillian: H is not Hermitian");
  for (const auto& a : jump_ops) {
    if (a.rows() != h.rows() || a.cols() != h.cols())
      throw DimensionError("Liouvillian: jump operator dimension mismatch");
    if (!a.allFinite()) throw NumericalError("Liouvillian: non-finite jump operator");
  }
  Matrix herm = 0.5 * (h + h.adjoint());
  return Liouvillian(std::move(herm), std::move(jump_ops));
}

Liouvillian Liouvillian::zero(Index d) { return build(Matrix::Zero(d, d), {}); }

Matrix Liouvillian::superoperator() const {
  return superop_ ? *superop_ : liouvillian_superop(h_, ops_);
}

Matrix Liouvillian::apply(const Matrix& rho) const {
  if (rho.rows() != dim() || rho.cols() != dim()) throw DimensionError("Liouvillian::apply: mismatch");
  Matrix out = Complex(0, -1) * (h_ * rho - rho * h_);
  for (const auto& a : ops_) {
    const Matrix ada = a.adjoint() * a;
    out += a * rho * a.adjoint() - 0.5 * (ada * rho + rho * ada);
  }
  return out;
}

Liouvillian Liouvillian::scaled(double c) const {
  if (c < 0) throw std::invalid_argument("Liouvillian::scaled: negative factor");
  std::vector<Matrix> ops;
  ops.reserve(ops_.size());
  for (const auto& a : ops_) ops.push_back(std::sqrt(c) * a);
  return Liouvillian(c * h_, std::move(ops));
}

Liouvillian operator+(const Liouvillian& a, const Liouvillian& b) {
  if (a.dim() != b.dim()) throw DimensionError("Liouvillian sum: dimension mismatch");
  std::vector<Matrix> ops = a.jump_operators();
  ops.insert(ops.end(), b.jump_operators().begin(), b.jump_operators().end());
  return Liouvillian::build(a.hamiltonian() + b.hamiltonian(), std::move(ops));
}

Liouvillian from_channel(const QuantumChannel& t) {
  if (t.d_in() != t.d_out()) throw DimensionError("from_channel: channel is not square");
  return Liouvillian::build(Matrix::Zero(t.d_in(), t.d_in()), t.kraus());
}

Liouvillian depolarizing_liouvillian(double r, const DensityMatrix& rho0) {
  if (r < 0) throw std::invalid_argument("depolarizing_liouvillian: negative rate");
  const Index d = rho0.dim();
  const auto eig = herm_eig(rho0.matrix());
  std::vector<Matrix> ops;
  for (Index j = 0; j < d; ++j) {
    if (eig.values(j) <= 0.0 || r == 0.0) continue;
    for (Index i = 0; i < d; ++i) {
      Matrix a = Matrix::Zero(d, d);
      a.col(i) = std::sqrt(r * eig.values(j)) * eig.vectors.col(j);
      ops.push_back(std::move(a));
    }
  }
  return Liouvillian::build(Matrix::Zero(d, d), std::move(ops));
}

Matrix semigroup_superop(const Liouvillian& l, double t) {
  if (t < 0) throw std::invalid_argument("semigroup: negative time");
  return expm(Matrix(t * l.superoperator()));
}

QuantumChannel semigroup_channel(const Liouvillian& l, double t) {
  return QuantumChannel::from_superop(semigroup_superop(l, t), l.dim(), l.dim());
}

Liouvillian local_sum(const Liouvillian& l, Index m) {
  if (m < 1) throw std::invalid_argument("local_sum: m must be ≥ 1");
  const Index d = l.dim();
  Index total = 1;
  for (Index i = 0; i < m; ++i) {
    total *= d;
    if (total > Liouvillian::kCacheDim) throw DimensionError("local_sum: d^m exceeds 32");
  }
  Matrix h = Matrix::Zero(total, total);
  std::vector<Matrix> ops;
  for (Index site = 0; site < m; ++site) {
    h += embed_local(l.hamiltonian(), site, m);
    for (const auto& a : l.jump_operators()) ops.push_back(embed_local(a, site, m));
  }
  return Liouvillian::build(std::move(h), std::move(ops));
}

PiecewiseLiouvillian::PiecewiseLiouvillian(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) throw std::invalid_argument("PiecewiseLiouvillian: no segments");
  for (const auto& s : segments_) {
    if (!(s.duration >= 0)) throw std::invalid_argument("PiecewiseLiouvillian: negative duration");
    if (s.generator.dim() != dim()) throw DimensionError("PiecewiseLiouvillian: dimension mismatch");
  }
}

double PiecewiseLiouvillian::total_time() const {
  double t = 0.0;
  for (const auto& s : segments_) t += s.duration;
  return t;
}

QuantumChannel evolve_piecewise(const PiecewiseLiouvillian& p) {
  const Index d = p.dim();
  Matrix total = Matrix::Identity(d * d, d * d);
  for (const auto& s : p.segments()) total = semigroup_superop(s.generator, s.duration) * total;
  return QuantumChannel::from_superop(total, d, d);
}

bool is_purely_dissipative(const Liouvillian& l, double tol) {
  if (l.hamiltonian().cwiseAbs().maxCoeff() > tol) return false;
  for (const auto& a : l.jump_operators())
    if (std::abs(a.trace()) > tol) return false;
  return true;
}

Liouvillian canonicalize(const Liouvillian& l) {
  const Index d = l.dim();
  const Matrix ident = Matrix::Identity(d, d);
  Matrix h = l.hamiltonian();
  std::vector<Matrix> ops;
  for (const auto& a : l.jump_operators()) {
    const Complex c = a.trace() / static_cast<double>(d);
    Matrix shifted = a - c * ident;
    h += Complex(0, 0.5) * (std::conj(c) * shifted - c * shifted.adjoint());
    if (shifted.cwiseAbs().maxCoeff() > 1e-15) ops.push_back(std::move(shifted));
  }
  h -= (h.trace() / static_cast<double>(d)) * ident;
  // Roundoff-level Hamiltonians are dropped so the predicate sees an exact zero.
  if (h.cwiseAbs().maxCoeff() < 1e-13) h.setZero();
  return Liouvillian::build(std::move(h), std::move(ops));
}

std::vector<DensityMatrix> fixed_points(const Liouvillian& l) {
  const Index d = l.dim();
  const Matrix s = l.superoperator();
  Eigen::BDCSVD<Matrix> svd(s, Eigen::ComputeFullV);
  const RealVector sv = svd.singularValues();
  const double cut = 1e-9 * std::max(1.0, sv(0));

  // Hermitian basis of the null space: L preserves Hermiticity, so the
  // Hermitian and anti-Hermitian parts of each null vector are stationary.
  std::vector<Matrix> herm;
  for (Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > cut) continue;
    const Matrix x = unvec(svd.matrixV().col(k), d);
    herm.push_back(0.5 * (x + x.adjoint()));
    herm.push_back(Complex(0, -0.5) * (x - x.adjoint()));
  }

  std::vector<DensityMatrix> out;
  auto consider = [&](Matrix rho) {
    const double tr = rho.trace().real();
    if (tr < 1e-8) return;
    rho /= tr;
    if (l.apply(rho).norm() > 1e-8) return;
    for (const auto& existing : out)
      if (trace_norm(existing.matrix() - rho) < 1e-6) return;
    out.emplace_back(rho, 1e-8);
  };
  for (const auto& h : herm) {
    if (h.norm() < 1e-12) continue;
    const auto eig = herm_eig(h);
    const Index n = eig.values.size();
    Matrix pos = Matrix::Zero(d, d), neg = Matrix::Zero(d, d);
    for (Index k = 0; k < n; ++k) {
      const Vector v = eig.vectors.col(k);
      if (eig.values(k) > 0) pos += eig.values(k) * v * v.adjoint();
      if (eig.values(k) < 0) neg -= eig.values(k) * v * v.adjoint();
    }
    consider(std::move(pos));
    consider(std::move(neg));
  }
  if (out.empty()) throw NumericalError("fixed_points: no stationary state found");
  return out;
}

}  // namespace qsub
