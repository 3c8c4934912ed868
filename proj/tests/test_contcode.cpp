#include "doctest.h"

#include "qsub/contcode.hpp"
#include "qsub/expm.hpp"

#include <cmath>

using namespace qsub;

namespace {

bool anticommutes(const Matrix& a, const Matrix& b) { return (a * b + b * a).norm() < 1e-9; }

std::vector<std::string> single_qubit_errors() {
  std::vector<std::string> out{"IIIII"};
  for (int q = 0; q < 5; ++q)
    for (char c : {'X', 'Y', 'Z'}) {
      std::string e(5, 'I');
      e[q] = c;
      out.push_back(e);
    }
  return out;
}

// f solves f'' + (r+2) f' + f = 0 with f(0) = 1, f'(0) = 0.
double f_ode(double t, double r) {
  RealMatrix companion(2, 2);
  companion << 0, 1, -1, -(r + 2);
  return expm(RealMatrix(t * companion))(0, 0);
}

// Binomial sum with exact binomials, for moderate t.
double f_direct_sum(double t, double r, int k_max) {
  double total = 0.0;
  double power_t = 1.0, fact = 1.0;
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) {
      power_t *= t;
      fact *= k;
    }
    double inner = 0.0;
    for (int l = 0; l <= k; ++l) {
      const int j = k - l;
      if (j > l + 1) continue;
      double binom = 1.0;
      for (int i = 0; i < j; ++i) binom = binom * (l + 1 - i) / (i + 1);
      inner += std::pow(r, l) * binom;
    }
    total += power_t / fact * inner;
  }
  return std::exp(-t * (r + 1)) * total;
}

// e^{tM} by uniformisation.
RealMatrix uniformised_exp(const RealMatrix& m, double t) {
  const double rate = (-m.diagonal()).maxCoeff();
  const RealMatrix step = RealMatrix::Identity(m.rows(), m.cols()) + m / rate;
  RealMatrix power = RealMatrix::Identity(m.rows(), m.cols());
  RealMatrix out = RealMatrix::Zero(m.rows(), m.cols());
  double weight = std::exp(-rate * t);
  for (int k = 0; k < 20000; ++k) {
    out += weight * power;
    power = step * power;
    weight *= rate * t / (k + 1);
    if (k > rate * t && weight < 1e-18) break;
  }
  return out;
}

}  // namespace

TEST_CASE("pauli strings") {
  CHECK(pauli_string("").rows() == 1);
  CHECK(pauli_string("XYZ").rows() == 8);
  CHECK_THROWS(pauli_string("XQ"));
  const Matrix y = pauli_string("Y");
  CHECK((y * y - Matrix::Identity(2, 2)).norm() < 1e-15);
  CHECK(std::abs(y(0, 1) - Complex(0, -1)) < 1e-15);
  // First symbol on the most significant factor.
  const Matrix xi = pauli_string("XI");
  CHECK(std::abs(xi(2, 0) - 1.0) < 1e-15);
  CHECK(std::abs(xi(1, 0)) < 1e-15);
}

TEST_CASE("five-qubit code structure") {
  const auto code = five_qubit_code();
  CHECK(code.physical_dim() == 32);
  CHECK(code.logical_dim() == 2);
  CHECK(code.m_physical == 5);
  CHECK(code.recovery_kraus.size() == 16);

  const Matrix& v = code.encoder.matrix();
  CHECK((v.adjoint() * v - Matrix::Identity(2, 2)).norm() < 1e-12);
  for (const auto& g : code.generators) {
    const Matrix gm = pauli_string(g);
    CHECK((gm * v - v).norm() < 1e-12);
  }
  for (std::size_t i = 0; i < code.generators.size(); ++i)
    for (std::size_t j = 0; j < code.generators.size(); ++j) {
      const Matrix a = pauli_string(code.generators[i]);
      const Matrix b = pauli_string(code.generators[j]);
      CHECK((a * b - b * a).norm() < 1e-12);
    }
  CHECK((pauli_string("XXXXX") * v.col(0) - v.col(1)).norm() < 1e-12);
  // Logical Z.
  const Matrix z = pauli_string("ZZZZZ");
  CHECK(std::abs((v.col(0).adjoint() * z * v.col(0))(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs((v.col(1).adjoint() * z * v.col(1))(0, 0) + 1.0) < 1e-12);

  // Syndrome table against matrix anticommutation.
  std::vector<int> hits(16, 0);
  for (const auto& e : single_qubit_errors()) {
    const Matrix em = pauli_string(e);
    unsigned expected = 0;
    for (const auto& g : code.generators) expected = (expected << 1) | (anticommutes(em, pauli_string(g)) ? 1u : 0u);
    const unsigned s = syndrome_of(e, code.generators);
    CHECK(s == expected);
    ++hits[s];
    CHECK(code.corrections[s] == e);
  }
  for (int h : hits) CHECK(h == 1);
  const unsigned combined = syndrome_of("XIIII", code.generators) ^ syndrome_of("IXIII", code.generators);
  CHECK(syndrome_of("XXIII", code.generators) == combined);
  CHECK_THROWS_AS(syndrome_of("XX", code.generators), DimensionError);

  // Recovery is trace preserving and the syndrome projectors partition 𝟙.
  Matrix sum = Matrix::Zero(32, 32);
  for (const auto& k : code.recovery_kraus) sum += k.adjoint() * k;
  CHECK((sum - Matrix::Identity(32, 32)).norm() < 1e-10);
  CHECK(code.recovery().d_in() == 32);
}

TEST_CASE("code conditions") {
  const auto code = five_qubit_code();
  const auto c = verify_code_conditions(code, QuantumChannel::pauli_depolarizing());
  CHECK(c.recovery_residual <= 1e-9);
  CHECK(c.noise_residual <= 1e-9);

  // Any single-qubit CPTP map is corrected.
  Rng rng(17);
  for (int trial = 0; trial < 3; ++trial) {
    const auto t = QuantumChannel::random(2, 2, 2 + trial, rng);
    CHECK(verify_code_conditions(code, t).noise_residual <= 1e-9);
  }
  CHECK(verify_code_conditions(code, QuantumChannel::amplitude_damping(0.4)).noise_residual <= 1e-9);
  CHECK_THROWS_AS(verify_code_conditions(code, QuantumChannel::identity(3)), DimensionError);

  // Neighbouring two-qubit flips are not correctable.
  std::vector<Matrix> pairs;
  for (int q = 0; q < 4; ++q) {
    std::string e(5, 'I');
    e[q] = e[q + 1] = 'X';
    pairs.push_back(pauli_string(e));
  }
  const auto bad = verify_code_conditions(code, pairs, 4.0);
  CHECK(bad.recovery_residual <= 1e-9);
  CHECK(bad.noise_residual > 0.1);
}

TEST_CASE("coding generator") {
  const auto code = five_qubit_code();
  const auto l = coding_liouvillian(code, 2.5);
  CHECK(l.dim() == 32);
  CHECK(is_purely_dissipative(canonicalize(l)));
  // Its action is r(R − id).
  Rng rng(4);
  const Matrix x = DensityMatrix::random(32, 3, rng).matrix();
  const Matrix expected = 2.5 * (code.recovery().apply(x) - x);
  CHECK((l.apply(x) - expected).norm() < 1e-10);
  CHECK_THROWS(coding_liouvillian(code, -1.0));
}

TEST_CASE("logical channel without correction matches product noise") {
  const auto code = five_qubit_code();
  const auto noise = from_channel(QuantumChannel::pauli_depolarizing());
  const double t = 0.3;
  const auto logical = logical_channel(code, noise, t, 0.0);

  // Without correction the qubits decay independently; apply the one-qubit
  // semigroup to each site in turn, then recover once.
  const auto per_qubit = semigroup_channel(noise, t);
  const Matrix& v = code.encoder.matrix();
  Matrix superop(4, 4);
  for (Index j = 0; j < 2; ++j)
    for (Index i = 0; i < 2; ++i) {
      Matrix x = v.col(i) * v.col(j).adjoint();
      for (Index site = 0; site < 5; ++site) {
        Matrix next = Matrix::Zero(32, 32);
        for (const auto& k : per_qubit.kraus()) {
          const Matrix e = embed_local(k, site, 5);
          next += e * x * e.adjoint();
        }
        x = next;
      }
      const Matrix out = code.recovery().apply(x);
      superop.col(i + 2 * j) = vec(Matrix(v.adjoint() * out * v));
    }
  CHECK((logical.superoperator() - superop).norm() < 1e-9);
  CHECK(logical_channel(code, noise, 0.0, 3.0).superoperator().isApprox(Matrix::Identity(4, 4), 1e-10));
  CHECK_THROWS(logical_channel(code, noise, -1.0, 0.0));
}

TEST_CASE("Krylov action agrees with the full exponential") {
  const auto code = five_qubit_code();
  const auto noise = from_channel(QuantumChannel::pauli_depolarizing());
  const double t = 0.7, r = 4.0;
  const Matrix gen = (local_sum(noise, 5) + coding_liouvillian(code, r)).superoperator();
  const Matrix& v = code.encoder.matrix();
  Matrix inputs(1024, 4);
  for (Index j = 0; j < 2; ++j)
    for (Index i = 0; i < 2; ++i) inputs.col(i + 2 * j) = vec(Matrix(v.col(i) * v.col(j).adjoint()));
  const auto krylov = expm_action(gen, inputs, t);
  const Matrix full = expm(Matrix(t * gen)) * inputs;
  CHECK((krylov.value - full).norm() < 1e-9);
  CHECK(krylov.subspace_dim < 1024);
}

TEST_CASE("entanglement fidelity grows with the coding rate") {
  const auto code = five_qubit_code();
  double previous = 0.0;
  for (double r : {0.0, 2.0, 20.0, 200.0}) {
    const auto check = alpha_lower_bound_check(code, 0.5, r);
    CHECK(check.fidelity >= previous - 1e-12);
    CHECK(check.pass);
    CHECK(check.fidelity <= 1.0 + 1e-12);
    CHECK(check.f_bound == doctest::Approx(f_closed_form(2.5, r / 5.0)).epsilon(1e-14));
    previous = check.fidelity;
  }
}

TEST_CASE("f closed form") {
  for (double t = 0.0; t <= 5.0; t += 0.25)
    for (double r : {0.0, 1e-9, 1e-3, 0.1, 0.5, 1.0, 2.0, 3.7, 10.0, 20.0}) {
      const double f = f_closed_form(t, r);
      CHECK(std::abs(f - f_ode(t, r)) <= 1e-10);
      CHECK(f >= 0.0);
      CHECK(f <= 1.0 + 1e-15);
    }
  for (double t = 0.0; t <= 6.0; t += 0.5) CHECK(std::abs(f_closed_form(t, 0.0) - std::exp(-t) * (1 + t)) < 1e-14);
  CHECK(f_closed_form(0.0, 7.0) == doctest::Approx(1.0));
  // Continuity across the branch switch at a t = 2.
  for (double r : {0.5, 2.0}) {
    const double a = std::sqrt(r * (4 + r));
    const double t0 = 2.0 / a;
    CHECK(std::abs(f_closed_form(t0 * (1 - 1e-12), r) - f_closed_form(t0 * (1 + 1e-12), r)) < 1e-10);
  }
  // Large arguments stay finite.
  CHECK(std::isfinite(f_closed_form(500.0, 1e4)));
  CHECK(f_closed_form(1.0, 1e6) > 0.999);
  CHECK_THROWS(f_closed_form(-1.0, 1.0));

  // Increasing in r, decreasing in t.
  for (double t : {0.5, 1.0, 3.0}) {
    double previous = -1.0;
    for (double r = 0.0; r <= 50.0; r += 2.5) {
      const double f = f_closed_form(t, r);
      CHECK(f >= previous - 1e-14);
      previous = f;
    }
  }
  for (double r : {0.0, 1.0, 10.0}) {
    double previous = 2.0;
    for (double t = 0.0; t <= 5.0; t += 0.1) {
      const double f = f_closed_form(t, r);
      CHECK(f <= previous + 1e-14);
      previous = f;
    }
  }

  // 1 − f vanishes at second order in t.
  for (double r : {0.0, 1.0, 5.0}) {
    const double t1 = 1e-3, t2 = 1e-2;
    const double slope = std::log((1 - f_closed_form(t2, r)) / (1 - f_closed_form(t1, r))) / std::log(t2 / t1);
    CHECK(slope >= 1.9);
  }
}

TEST_CASE("f series") {
  for (double t = 0.0; t <= 5.0; t += 0.5)
    for (double r = 0.0; r <= 20.0; r += 2.5) {
      const auto s = f_series(t, r, 400);
      CHECK(std::abs(s.value - f_closed_form(t, r)) <= 1e-8);
      CHECK(s.remainder_bound <= 1e-12);
    }
  for (double t : {0.5, 1.5})
    for (double r : {0.3, 2.0}) {
      const double direct = f_direct_sum(t, r, 60);
      CHECK(std::abs(f_series(t, r, 60).value - direct) <= 1e-13);
    }
  // The remainder bound covers truncation.
  for (int k : {2, 5, 10, 20}) {
    const auto s = f_series(2.0, 3.0, k);
    const double actual = f_closed_form(2.0, 3.0) - s.value;
    CHECK(actual >= -1e-14);
    CHECK(actual <= s.remainder_bound + 1e-14);
  }
  CHECK(f_series(0.0, 4.0, 3).value == 1.0);
  CHECK(f_series(1.0, 0.0, 5).value == doctest::Approx(2.0 * std::exp(-1.0)));
  CHECK_THROWS(f_series(1.0, 1.0, 0));
}

TEST_CASE("classical chains") {
  RealMatrix bad(2, 2);
  bad << 0.5, 0.2, 0.5, 0.7;
  CHECK_THROWS(ClassicalChain(bad, ClassicalChain::Kind::stochastic));
  RealMatrix neg(2, 2);
  neg << -1, 1, 1, -1;
  CHECK_NOTHROW(ClassicalChain(neg, ClassicalChain::Kind::intensity));
  CHECK_THROWS(ClassicalChain(neg, ClassicalChain::Kind::stochastic));
  RealMatrix off(2, 2);
  off << 1, -1, -1, 1;
  CHECK_THROWS(ClassicalChain(off, ClassicalChain::Kind::intensity));
  CHECK_THROWS(ClassicalChain(RealMatrix::Zero(2, 3), ClassicalChain::Kind::intensity));
}

TEST_CASE("classical repetition code") {
  const auto code = classical_repetition();
  CHECK(code.encoder.rows() == 8);
  CHECK(code.encoder.cols() == 2);
  CHECK(code.recovery * code.encoder == code.encoder);
  CHECK(code.recovery * code.recovery == code.recovery);
  for (int x = 0; x < 8; ++x) {
    CHECK(code.recovery.col(x).sum() == 1);
    CHECK(code.flips.col(x).sum() == 3);
    int weight = 0;
    for (int b = 0; b < 3; ++b) weight += (x >> b) & 1;
    CHECK(code.recovery(weight >= 2 ? 7 : 0, x) == 1);
  }
  CHECK(code.flips == code.flips.transpose());
  // Flip patterns of weight ≤ 1 are undone.
  const Eigen::MatrixXi once = code.recovery * code.flips * code.encoder;
  CHECK(once == 3 * code.encoder);
  CHECK(code.noise.matrix.colwise().sum().cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("classical alpha check") {
  // r = 0: majority of three independent bits flips.
  for (double t : {0.1, 0.5, 1.0, 2.0}) {
    const double p = 0.5 * (1 - std::exp(-2 * t));
    const double expected = 3 * p * p * (1 - p) + p * p * p;
    CHECK(std::abs(classical_alpha_check(t, 0.0).tv_distance - expected) < 1e-12);
  }
  const auto code = classical_repetition();
  const RealMatrix rec = code.recovery.cast<double>();
  const RealMatrix enc = code.encoder.cast<double>();
  for (double t : {0.2, 1.0, 3.0})
    for (double r : {0.5, 5.0, 40.0}) {
      const RealMatrix gen = code.noise.matrix + r * (rec - RealMatrix::Identity(8, 8));
      const RealMatrix out = rec * uniformised_exp(gen, t) * enc;
      double tv = 0.0;
      for (Index c = 0; c < 2; ++c) tv = std::max(tv, 0.5 * (out.col(c) - enc.col(c)).cwiseAbs().sum());
      const auto check = classical_alpha_check(t, r);
      CHECK(std::abs(check.tv_distance - tv) < 1e-10);
      CHECK(check.pass);
      CHECK(check.f_bound == doctest::Approx(f_closed_form(3 * t, r / 3)));
    }
  CHECK(classical_alpha_check(0.0, 3.0).tv_distance < 1e-15);
  CHECK_THROWS(classical_alpha_check(-1.0, 1.0));
}
