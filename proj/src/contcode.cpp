#include "qsub/contcode.hpp"

#include "qsub/expm.hpp"

#include <cmath>

namespace qsub {

Matrix pauli_string(const std::string& s) {
  Matrix out = Matrix::Identity(1, 1);
  for (char c : s) {
    Matrix p(2, 2);
    switch (c) {
      case 'I': p << 1, 0, 0, 1; break;
      case 'X': p << 0, 1, 1, 0; break;
      case 'Y': p << 0, Complex(0, -1), Complex(0, 1), 0; break;
      case 'Z': p << 1, 0, 0, -1; break;
      default: throw std::invalid_argument("pauli_string: unknown symbol");
    }
    out = kron(out, p);
  }
  return out;
}

unsigned syndrome_of(const std::string& error, const std::vector<std::string>& generators) {
  unsigned s = 0;
  for (const auto& g : generators) {
    if (g.size() != error.size()) throw DimensionError("syndrome_of: length mismatch");
    int anti = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
      anti += error[i] != 'I' && g[i] != 'I' && error[i] != g[i];
    s = (s << 1) | static_cast<unsigned>(anti & 1);
  }
  return s;
}

QuantumChannel StabilizerCode::recovery() const { return QuantumChannel::from_kraus(recovery_kraus); }

namespace {

Matrix syndrome_projector(const std::vector<std::string>& generators, unsigned s, Index dim) {
  const Index n = static_cast<Index>(generators.size());
  Matrix p = Matrix::Identity(dim, dim);
  for (Index j = 0; j < n; ++j) {
    const double sign = (s >> (n - 1 - j)) & 1u ? -1.0 : 1.0;
    p = p * (0.5 * (Matrix::Identity(dim, dim) + sign * pauli_string(generators[j])));
  }
  return p;
}

}  // namespace

StabilizerCode five_qubit_code() {
  const std::vector<std::string> gens{"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"};
  const Index dim = 32;

  std::vector<std::string> corrections(16);
  std::vector<bool> seen(16, false);
  std::vector<std::string> errors{"IIIII"};
  for (int q = 0; q < 5; ++q)
    for (char c : {'X', 'Y', 'Z'}) {
      std::string e(5, 'I');
      e[q] = c;
      errors.push_back(e);
    }
  for (const auto& e : errors) {
    const unsigned s = syndrome_of(e, gens);
    if (seen[s]) throw NumericalError("five_qubit_code: syndrome collision");
    seen[s] = true;
    corrections[s] = e;
  }

  const Matrix code_proj = syndrome_projector(gens, 0, dim);
  Vector zero = code_proj.col(0);
  zero /= zero.norm();
  Matrix v(dim, 2);
  v.col(0) = zero;
  v.col(1) = pauli_string("XXXXX") * zero;

  std::vector<Matrix> kraus;
  for (unsigned s = 0; s < 16; ++s)
    kraus.push_back(pauli_string(corrections[s]) * syndrome_projector(gens, s, dim));

  return StabilizerCode{1, 5, gens, Isometry(v), std::move(corrections), std::move(kraus)};
}

namespace {

Matrix apply_kraus(const std::vector<Matrix>& kraus, const Matrix& x) {
  Matrix out = Matrix::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto& k : kraus) out.noalias() += k * x * k.adjoint();
  return out;
}

std::vector<Matrix> local_sum_kraus(const QuantumChannel& t, Index m) {
  std::vector<Matrix> out;
  for (Index site = 0; site < m; ++site)
    for (const auto& k : t.kraus()) out.push_back(embed_local(k, site, m));
  return out;
}

}  // namespace

CodeConditions verify_code_conditions(const StabilizerCode& code, const std::vector<Matrix>& noise_kraus,
                                      double multiplicity) {
  const Index n = code.physical_dim();
  for (const auto& k : noise_kraus)
    if (k.rows() != n || k.cols() != n) throw DimensionError("verify_code_conditions: noise dimension mismatch");
  const Matrix& v = code.encoder.matrix();
  const Index dl = code.logical_dim();
  double recovery_sq = 0.0, noise_sq = 0.0;
  // Superoperator columns are the images of the matrix units E_ij.
  for (Index i = 0; i < dl; ++i)
    for (Index j = 0; j < dl; ++j) {
      const Matrix x = v.col(i) * v.col(j).adjoint();
      recovery_sq += (apply_kraus(code.recovery_kraus, x) - x).squaredNorm();
      const Matrix noisy = apply_kraus(noise_kraus, x);
      noise_sq += (apply_kraus(code.recovery_kraus, noisy) - multiplicity * x).squaredNorm();
    }
  return {std::sqrt(recovery_sq), std::sqrt(noise_sq)};
}

CodeConditions verify_code_conditions(const StabilizerCode& code, const QuantumChannel& t) {
  if (t.d_in() != t.d_out()) throw DimensionError("verify_code_conditions: channel is not square");
  Index total = 1;
  for (Index i = 0; i < code.m_physical; ++i) total *= t.d_in();
  if (total != code.physical_dim()) throw DimensionError("verify_code_conditions: local dimension mismatch");
  return verify_code_conditions(code, local_sum_kraus(t, code.m_physical), double(code.m_physical));
}

Liouvillian coding_liouvillian(const StabilizerCode& code, double r) {
  if (r < 0) throw std::invalid_argument("coding_liouvillian: negative rate");
  const Index n = code.physical_dim();
  return Liouvillian::build(Matrix::Zero(n, n), code.recovery_kraus).scaled(r);
}

QuantumChannel logical_channel(const StabilizerCode& code, const Liouvillian& noise, double t, double r) {
  if (t < 0) throw std::invalid_argument("logical_channel: negative time");
  const Index n = code.physical_dim();
  const Index dl = code.logical_dim();
  const Liouvillian total = local_sum(noise, code.m_physical) + coding_liouvillian(code, r);
  if (total.dim() != n) throw DimensionError("logical_channel: noise dimension mismatch");

  const Matrix& v = code.encoder.matrix();
  Matrix inputs(n * n, dl * dl);
  for (Index j = 0; j < dl; ++j)
    for (Index i = 0; i < dl; ++i) inputs.col(i + j * dl) = vec(Matrix(v.col(i) * v.col(j).adjoint()));

  const auto evolved = expm_action(total.superoperator(), inputs, t);
  const Matrix code_proj = v * v.adjoint();
  Matrix superop(dl * dl, dl * dl);
  for (Index c = 0; c < dl * dl; ++c) {
    const Matrix out = apply_kraus(code.recovery_kraus, unvec(evolved.value.col(c), n));
    if ((out - code_proj * out * code_proj).norm() > 1e-6)
      throw NumericalError("logical_channel: recovery leaks outside the codespace");
    superop.col(c) = vec(Matrix(v.adjoint() * out * v));
  }
  return QuantumChannel::from_superop(superop, dl, dl);
}

double f_closed_form(double t, double r) {
  if (t < 0 || r < 0) throw std::invalid_argument("f_closed_form: negative argument");
  const double a = std::sqrt(r * (4.0 + r));
  const double x = 0.5 * a * t;
  const double y = t * (0.5 * r + 1.0);
  if (x < 1.0) {
    // sinh(x)/a = (t/2) sinh(x)/x, finite as a → 0.
    const double x2 = x * x;
    const double sinhc = x < 1e-4 ? 1.0 + x2 / 6.0 + x2 * x2 / 120.0 : std::sinh(x) / x;
    return std::exp(-y) * (std::cosh(x) + (2.0 + r) * 0.5 * t * sinhc);
  }
  const double ratio = (2.0 + r) / a;
  return 0.5 * std::exp(x - y) * (1.0 + ratio) + 0.5 * std::exp(-x - y) * (1.0 - ratio);
}

SeriesValue f_series(double t, double r, int k_terms) {
  if (t < 0 || r < 0) throw std::invalid_argument("f_series: negative argument");
  if (k_terms < 1) throw std::invalid_argument("f_series: k_terms must be ≥ 1");
  if (t == 0.0) return {1.0, 0.0};
  const double mean = t * (1.0 + r);
  const double log_t = std::log(t);
  double total = 0.0;
  for (int k = 0; k <= k_terms; ++k) {
    const double base = k * log_t - std::lgamma(k + 1.0) - mean;
    if (r == 0.0) {
      if (k <= 1) total += std::exp(base);  // C(1, k)
      continue;
    }
    const double log_r = std::log(r);
    for (int l = (k - 1 + 1) / 2; l <= k; ++l) {
      const int j = k - l;
      if (j > l + 1) continue;
      const double log_binom = std::lgamma(l + 2.0) - std::lgamma(j + 1.0) - std::lgamma(l - j + 2.0);
      total += std::exp(base + l * log_r + log_binom);
    }
  }
  // Inner sums are at most (1+r)^k, so the tail is a Poisson(t(1+r)) tail.
  double tail = 0.0;
  for (int k = k_terms + 1; k <= k_terms + 2000; ++k) {
    const double term = std::exp(k * std::log(mean) - std::lgamma(k + 1.0) - mean);
    tail += term;
    if (k > mean && term < 1e-300) break;
  }
  return {total, tail};
}

AlphaCheck alpha_lower_bound_check(const StabilizerCode& code, double t, double r) {
  const auto noise = from_channel(QuantumChannel::pauli_depolarizing());
  const double m = static_cast<double>(code.m_physical);
  AlphaCheck out;
  out.fidelity = entanglement_fidelity(logical_channel(code, noise, t, r));
  out.f_bound = f_closed_form(m * t, r / m);
  out.pass = out.fidelity >= out.f_bound - 1e-9;
  return out;
}

ClassicalChain::ClassicalChain(RealMatrix m, Kind k) : matrix(std::move(m)), kind(k) {
  if (matrix.rows() != matrix.cols()) throw DimensionError("ClassicalChain: matrix is not square");
  const double target = kind == Kind::stochastic ? 1.0 : 0.0;
  for (Index j = 0; j < matrix.cols(); ++j) {
    if (std::abs(matrix.col(j).sum() - target) > 1e-12)
      throw std::invalid_argument("ClassicalChain: column sums are wrong");
    for (Index i = 0; i < matrix.rows(); ++i)
      if ((kind == Kind::stochastic || i != j) && matrix(i, j) < 0)
        throw std::invalid_argument("ClassicalChain: negative entry");
  }
}

RepetitionCode classical_repetition() {
  Eigen::MatrixXi encoder = Eigen::MatrixXi::Zero(8, 2);
  encoder(0, 0) = 1;
  encoder(7, 1) = 1;

  Eigen::MatrixXi recovery = Eigen::MatrixXi::Zero(8, 8);
  for (int x = 0; x < 8; ++x) {
    const int ones = (x & 1) + ((x >> 1) & 1) + ((x >> 2) & 1);
    recovery(ones >= 2 ? 7 : 0, x) = 1;
  }

  Eigen::MatrixXi flips = Eigen::MatrixXi::Zero(8, 8);
  for (int x = 0; x < 8; ++x)
    for (int bit = 0; bit < 3; ++bit) flips(x ^ (1 << bit), x) += 1;

  RealMatrix generator = flips.cast<double>() - 3.0 * RealMatrix::Identity(8, 8);
  return {encoder, recovery, flips, ClassicalChain(generator, ClassicalChain::Kind::intensity)};
}

ClassicalCheck classical_alpha_check(double t, double r) {
  if (t < 0 || r < 0) throw std::invalid_argument("classical_alpha_check: negative argument");
  const auto code = classical_repetition();
  const RealMatrix rec = code.recovery.cast<double>();
  const RealMatrix enc = code.encoder.cast<double>();
  const RealMatrix gen = code.noise.matrix + r * (rec - RealMatrix::Identity(8, 8));
  const RealMatrix out = rec * expm(RealMatrix(t * gen)) * enc;
  ClassicalCheck res;
  res.tv_distance = 0.0;
  for (Index c = 0; c < 2; ++c)
    res.tv_distance = std::max(res.tv_distance, 0.5 * (out.col(c) - enc.col(c)).cwiseAbs().sum());
  res.f_bound = f_closed_form(3.0 * t, r / 3.0);
  res.pass = res.tv_distance <= 1.0 - res.f_bound + 1e-9;
  return res;
}

}  // namespace qsub
