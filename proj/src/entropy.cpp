#include "qsub/entropy.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace qsub {

namespace {

double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

// Orthonormal Hermitian basis of M_d (trace inner product).
std::vector<Matrix> hermitian_basis(Index d) {
  std::vector<Matrix> basis;
  const double s = 1.0 / std::sqrt(2.0);
  for (Index j = 0; j < d; ++j) {
    Matrix e = Matrix::Zero(d, d);
    e(j, j) = 1.0;
    basis.push_back(std::move(e));
  }
  for (Index j = 0; j < d; ++j)
    for (Index k = j + 1; k < d; ++k) {
      Matrix re = Matrix::Zero(d, d), im = Matrix::Zero(d, d);
      re(j, k) = re(k, j) = s;
      im(j, k) = Complex(0, s);
      im(k, j) = Complex(0, -s);
      basis.push_back(std::move(re));
      basis.push_back(std::move(im));
    }
  return basis;
}

// Applies `op` to tensor factor `site` of a state vector with the given dims.
void apply_factor(Vector& v, const Dims& dims, std::size_t site, const Matrix& op) {
  const Index d = dims[site];
  Index left = 1, right = 1;
  for (std::size_t i = 0; i < site; ++i) left *= dims[i];
  for (std::size_t i = site + 1; i < dims.size(); ++i) right *= dims[i];
  for (Index l = 0; l < left; ++l) {
    Eigen::Map<Matrix> block(v.data() + l * d * right, right, d);
    block = (block * op.transpose()).eval();
  }
}

}  // namespace

double shannon_entropy(const RealVector& p) {
  double s = 0.0;
  for (Index i = 0; i < p.size(); ++i) s -= xlog2x(p(i));
  return s;
}

double von_neumann(const Matrix& rho) { return shannon_entropy(herm_eigenvalues(rho)); }

double von_neumann(const DensityMatrix& rho) { return von_neumann(rho.matrix()); }

double conditional_entropy(const Matrix& rho_ab, const Dims& dims) {
  if (dims.size() != 2) throw DimensionError("conditional_entropy: expected two subsystems");
  return von_neumann(rho_ab) - von_neumann(partial_trace(rho_ab, dims, {1}));
}

double coherent_information_state(const Matrix& rho_ab, const Dims& dims) {
  return -conditional_entropy(rho_ab, dims);
}

double coherent_information_channel(const Matrix& rho, const QuantumChannel& t) {
  if (rho.rows() % t.d_in() != 0) throw DimensionError("coherent_information_channel: mismatch");
  const Index d_ref = rho.rows() / t.d_in();
  return coherent_information_state(apply_local(t, rho, d_ref), {d_ref, t.d_out()});
}

Ensemble::Ensemble(RealVector p, std::vector<DensityMatrix> s)
    : probabilities(std::move(p)), states(std::move(s)) {
  if (probabilities.size() != static_cast<Index>(states.size()) || states.empty())
    throw DimensionError("Ensemble: probabilities and states differ in length");
  if (probabilities.minCoeff() < 0.0) throw std::invalid_argument("Ensemble: negative probability");
  if (std::abs(probabilities.sum() - 1.0) > 1e-10)
    throw std::invalid_argument("Ensemble: probabilities do not sum to 1");
  for (const auto& rho : states)
    if (rho.dim() != states.front().dim()) throw DimensionError("Ensemble: mixed dimensions");
}

DensityMatrix Ensemble::average() const {
  Matrix avg = Matrix::Zero(states.front().dim(), states.front().dim());
  for (std::size_t i = 0; i < states.size(); ++i) avg += probabilities(i) * states[i].matrix();
  return DensityMatrix(avg);
}

Ensemble apply(const QuantumChannel& t, const Ensemble& e) {
  std::vector<DensityMatrix> out;
  out.reserve(e.states.size());
  for (const auto& rho : e.states) out.push_back(t(rho));
  return Ensemble(e.probabilities, std::move(out));
}

double holevo_chi(const Ensemble& e) {
  double chi = von_neumann(e.average());
  for (std::size_t i = 0; i < e.states.size(); ++i) chi -= e.probabilities(i) * von_neumann(e.states[i]);
  return chi;
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_entropy: p outside [0,1]");
  return -xlog2x(p) - xlog2x(1.0 - p);
}

double fannes_audenaert_bound(double delta, Index d) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("fannes_audenaert_bound: δ ∉ [0,1]");
  return delta * std::log2(static_cast<double>(d)) + binary_entropy(delta);
}

double continuity_capacity_bound(double epsilon, Index d_b) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("continuity_capacity_bound: ε ∉ (0,1]");
  return 8.0 * epsilon * static_cast<double>(d_b) + 4.0 * binary_entropy(epsilon);
}

// --- conditional min-entropy ------------------------------------------------
//
// Primal: minimise tr σ subject to S = 𝟙_A⊗σ - ρ ⪰ 0, with σ expanded in an
// orthonormal Hermitian basis. Log-det barrier path following; at each centred
// point Z = μS⁻¹ is nearly dual feasible, and rescaling it so that tr_A Z = 𝟙
// gives a certified lower bound tr(ρZ).

MinEntropyResult min_entropy_solve(const Matrix& rho_ab, const Dims& dims, double gap_tol) {
  if (dims.size() != 2) throw DimensionError("min_entropy: expected two subsystems");
  const Index da = dims[0], db = dims[1], n = da * db;
  if (rho_ab.rows() != n || rho_ab.cols() != n) throw DimensionError("min_entropy: dims mismatch");
  if (n > 64) throw DimensionError("min_entropy: d_A·d_B exceeds 64");
  const Matrix rho = 0.5 * (rho_ab + rho_ab.adjoint());

  const auto basis = hermitian_basis(db);
  const Index p = static_cast<Index>(basis.size());
  const Matrix id_a = Matrix::Identity(da, da);
  Matrix basis_vecs(db * db, p);
  RealVector cost(p);
  for (Index k = 0; k < p; ++k) {
    basis_vecs.col(k) = vec(basis[k]);
    cost(k) = basis[k].trace().real();
  }
  auto sigma_of = [&](const RealVector& x) {
    Matrix s = Matrix::Zero(db, db);
    for (Index k = 0; k < p; ++k) s += x(k) * basis[k];
    return s;
  };
  auto slack_of = [&](const RealVector& x) { return Matrix(kron(id_a, sigma_of(x)) - rho); };
  // Barrier objective cost·x/μ - log det S; +inf outside the feasible cone.
  auto barrier = [&](const RealVector& x, double mu) {
    Eigen::LLT<Matrix> llt(slack_of(x));
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    double logdet = 0.0;
    for (Index i = 0; i < n; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i).real());
    if (!std::isfinite(logdet)) return std::numeric_limits<double>::infinity();
    return cost.dot(x) / mu - logdet;
  };

  const double lmax = herm_eigenvalues(rho)(0);
  RealVector x = RealVector::Zero(p);
  for (Index j = 0; j < db; ++j) x(j) = lmax + 1.0;
  double mu = 1.0;
  int iterations = 0;
  constexpr int kMaxIterations = 2000;

  // Certified lower bound from the barrier dual point Z = μS⁻¹, rescaled so
  // that tr_A Z = 𝟙.
  auto certify = [&](const RealVector& xs, double m) {
    const Matrix z = m * slack_of(xs).llt().solve(Matrix::Identity(n, n));
    const auto eig = herm_eig(partial_trace(z, {da, db}, {1}));
    if (eig.values.minCoeff() <= 0) return -std::numeric_limits<double>::infinity();
    Matrix inv_sqrt = Matrix::Zero(db, db);
    for (Index k = 0; k < db; ++k)
      inv_sqrt += (1.0 / std::sqrt(eig.values(k))) * eig.vectors.col(k) * eig.vectors.col(k).adjoint();
    const Matrix scale = kron(id_a, inv_sqrt);
    return (rho * scale * z * scale).trace().real();
  };

  MinEntropyResult out;
  while (true) {
    // Centring by damped Newton.
    for (int inner = 0; inner < 100; ++inner) {
      if (++iterations > kMaxIterations)
        throw NumericalError("min_entropy: iteration cap reached, gap " + std::to_string(n * mu));
      const Matrix w = slack_of(x).llt().solve(Matrix::Identity(n, n));
      // With W = S⁻¹ in d_B×d_B blocks W_ab, the Hessian is the map
      // X ↦ Σ_ab W_ab X W_ba = tr_A[W(𝟙⊗X)W] restricted to the basis, and the
      // gradient pairs the basis with tr_A W.
      Matrix sup = Matrix::Zero(db * db, db * db);
      Matrix w_reduced = Matrix::Zero(db, db);
      for (Index a = 0; a < da; ++a) {
        w_reduced += w.block(a * db, a * db, db, db);
        for (Index b = 0; b < da; ++b)
          sup += kron(Matrix(w.block(b * db, a * db, db, db).transpose()), Matrix(w.block(a * db, b * db, db, db)));
      }
      const RealVector grad = cost / mu - (basis_vecs.adjoint() * vec(w_reduced)).real();
      RealMatrix hess = (basis_vecs.adjoint() * sup * basis_vecs).real();
      hess = 0.5 * (hess + hess.transpose());
      const RealVector step = -hess.ldlt().solve(grad);
      const double decrement = -grad.dot(step);
      if (decrement < 1e-10) break;
      double alpha = 1.0;
      const double f0 = barrier(x, mu);
      while (alpha > 1e-12 && barrier(x + alpha * step, mu) > f0 - 0.25 * alpha * decrement) alpha *= 0.5;
      if (alpha <= 1e-12) break;
      x += alpha * step;
    }
    out.primal = x.head(db).sum();
    out.dual = certify(x, mu);
    if (out.primal - out.dual <= gap_tol * std::max(1.0, out.primal)) break;
    if (mu < 1e-18)
      throw NumericalError("min_entropy: duality gap " + std::to_string(out.primal - out.dual));
    mu *= 0.2;
  }

  out.sigma = sigma_of(x);
  out.iterations = iterations;
  out.value = -std::log2(out.primal);
  return out;
}

double min_entropy(const Matrix& rho_ab, const Dims& dims) {
  return min_entropy_solve(rho_ab, dims, 1e-8).value;
}

// --- typical subspaces -------------------------------------------------------

TypicalSubspace typical_subspace(const DensityMatrix& rho0, Index nu, const TypicalConfig& cfg) {
  if (!(cfg.delta > 0.0)) throw std::invalid_argument("typical_subspace: δ must be positive");
  if (nu < 1) throw std::invalid_argument("typical_subspace: ν must be ≥ 1");
  const Index d = rho0.dim();
  Index total = 1;
  for (Index i = 0; i < nu; ++i) {
    total *= d;
    if (total > kMaxTypicalDim) throw DimensionError("typical_subspace: d^ν exceeds 4096");
  }
  const auto eig = herm_eig(rho0.matrix());
  TypicalSubspace out;
  out.d = d;
  out.nu = nu;
  out.probabilities = eig.values.cwiseMax(0.0);
  out.eigenbasis = eig.vectors;
  out.is_typical.assign(total, false);
  out.p_typical = 0.0;
  const double entropy = shannon_entropy(out.probabilities);

  std::vector<Index> digits(nu, 0);
  for (Index x = 0; x < total; ++x) {
    Index rest = x;
    for (Index i = nu - 1; i >= 0; --i) {
      digits[i] = rest % d;
      rest /= d;
    }
    double surprisal = 0.0, prob = 1.0;
    for (Index i = 0; i < nu; ++i) {
      const double q = out.probabilities(digits[i]);
      prob *= q;
      surprisal += q > 0.0 ? -std::log2(q) : std::numeric_limits<double>::infinity();
    }
    if (std::abs(surprisal / static_cast<double>(nu) - entropy) <= cfg.delta + 1e-12) {
      out.is_typical[x] = true;
      out.sequences.push_back(x);
      out.p_typical += prob;
    }
  }
  return out;
}

namespace {

Vector sequence_vector(const TypicalSubspace& t, Index x) {
  Vector v = Vector::Ones(1);
  Index stride = 1;
  for (Index i = 1; i < t.nu; ++i) stride *= t.d;
  for (Index i = 0; i < t.nu; ++i) {
    const Index digit = (x / stride) % t.d;
    v = kron(v, t.eigenbasis.col(digit));
    stride = std::max<Index>(1, stride / t.d);
  }
  return v;
}

}  // namespace

Matrix TypicalSubspace::projector() const {
  Index total = 1;
  for (Index i = 0; i < nu; ++i) total *= d;
  Matrix q(total, rank());
  for (Index k = 0; k < rank(); ++k) q.col(k) = sequence_vector(*this, sequences[k]);
  return q * q.adjoint();
}

Matrix typical_projector(const DensityMatrix& rho0, Index nu, const TypicalConfig& cfg) {
  return typical_subspace(rho0, nu, cfg).projector();
}

double fitted_c_prime(const TypicalSubspace& t, double delta) {
  const double tail = 1.0 - t.p_typical;
  if (tail <= 0.0) return std::numeric_limits<double>::infinity();
  return -std::log2(tail) / (static_cast<double>(t.nu) * delta * delta);
}

SchumacherCode schumacher_compress(const DensityMatrix& rho0, Index nu, const TypicalConfig& cfg) {
  const auto typ = typical_subspace(rho0, nu, cfg);
  const Index total = static_cast<Index>(typ.is_typical.size());
  SchumacherCode out;
  out.p_typical = typ.p_typical;
  out.n_compressed = 0;
  while (typ.rank() > (Index{1} << out.n_compressed)) ++out.n_compressed;

  const Index block = Index{1} << out.n_compressed;
  const Index stride = total % block == 0 ? total / block : 1;
  std::vector<Index> target(total, -1);
  std::vector<bool> used(total, false);
  Index k = 0;
  for (Index x : typ.sequences) {
    target[x] = (k++) * stride;
    used[target[x]] = true;
  }
  Index next = 0;
  for (Index x = 0; x < total; ++x) {
    if (typ.is_typical[x]) continue;
    while (used[next]) ++next;
    target[x] = next;
    used[next] = true;
  }
  out.unitary = Matrix::Zero(total, total);
  for (Index x = 0; x < total; ++x) out.unitary.row(target[x]) = sequence_vector(typ, x).adjoint();
  return out;
}

// --- truncated Choi purification --------------------------------------------

Vector choi_purification(const QuantumChannel& t) {
  const Matrix v = stinespring(t).matrix();
  const Index d_in = t.d_in(), rest = v.rows();
  Vector out(d_in * rest);
  for (Index i = 0; i < d_in; ++i) out.segment(i * rest, rest) = v.col(i);
  return out / std::sqrt(static_cast<double>(d_in));
}

TruncatedPurification truncated_choi_purification(const QuantumChannel& t, Index m,
                                                  const TypicalConfig& cfg) {
  if (m < 1) throw std::invalid_argument("truncated_choi_purification: m must be ≥ 1");
  const Index d_env = static_cast<Index>(t.kraus().size());
  const Index block = t.d_in() * t.d_out() * d_env;
  Index total = 1;
  for (Index i = 0; i < m; ++i) {
    total *= block;
    if (total > kMaxTypicalDim) throw DimensionError("truncated_choi_purification: dimension exceeds 4096");
  }
  const Matrix sigma_e = complementary(t).apply(Matrix::Identity(t.d_in(), t.d_in()) / double(t.d_in()));
  const auto typ = typical_subspace(DensityMatrix(sigma_e, 1e-8), m, cfg);
  if (typ.rank() == 0) throw NumericalError("truncated_choi_purification: no typical sequences");

  Dims single{t.d_in(), t.d_out(), d_env};
  Dims dims;
  for (Index i = 0; i < m; ++i) dims.insert(dims.end(), single.begin(), single.end());

  // Rotate each environment factor to the σ^E eigenbasis, mask, rotate back.
  Vector one = choi_purification(t);
  apply_factor(one, single, 2, typ.eigenbasis.adjoint());
  Vector full = Vector::Ones(1);
  for (Index i = 0; i < m; ++i) full = kron(full, one);
  const Vector exact_rotated = full;
  for (Index x = 0; x < total; ++x) {
    Index rest = x, seq = 0, weight = 1;
    for (Index c = m - 1; c >= 0; --c) {
      seq += (rest % d_env) * weight;
      weight *= d_env;
      rest /= block;
    }
    if (!typ.is_typical[seq]) full(x) = 0.0;
  }
  const double kept = full.squaredNorm();
  const double overlap = std::norm(exact_rotated.dot(full)) / kept;
  for (Index c = 0; c < m; ++c) apply_factor(full, dims, static_cast<std::size_t>(3 * c + 2), typ.eigenbasis);

  TruncatedPurification out{PureState(full / std::sqrt(kept)), typ.rank(),
                            2.0 * std::sqrt(std::max(0.0, 1.0 - overlap)), typ.p_typical};
  return out;
}

}  // namespace qsub
