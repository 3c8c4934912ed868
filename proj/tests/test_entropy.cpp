#include "doctest.h"

#include "qsub/entropy.hpp"
#include "qsub/lindblad.hpp"

#include <cmath>

using namespace qsub;

namespace {

double binom(int n, int k) { return std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0)); }

// Exact typical probability for a qubit state with eigenvalues (p, 1-p).
double binomial_typical(double p, int nu, double delta) {
  const double s = binary_entropy(p);
  double total = 0.0;
  for (int k = 0; k <= nu; ++k) {
    const double rate = (-(nu - k) * std::log2(p) - k * std::log2(1 - p)) / nu;
    if (std::abs(rate - s) <= delta + 1e-12) total += binom(nu, k) * std::pow(p, nu - k) * std::pow(1 - p, k);
  }
  return total;
}

RealVector qubit_probs(double p) {
  RealVector v(2);
  v << p, 1 - p;
  return v;
}

}  // namespace

TEST_CASE("von Neumann entropy") {
  Rng rng(1);
  CHECK(std::abs(von_neumann(DensityMatrix(PureState::random(4, rng)))) < 1e-12);
  CHECK(von_neumann(DensityMatrix::maximally_mixed(5)) == doctest::Approx(std::log2(5.0)));
  CHECK(von_neumann(DensityMatrix::diagonal(qubit_probs(0.75))) == doctest::Approx(0.8112781244591328));
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = DensityMatrix::random(4, rng);
    const double s = von_neumann(rho);
    CHECK(s >= -1e-12);
    CHECK(s <= 2.0 + 1e-12);
  }
}

TEST_CASE("conditional entropy and coherent information") {
  const Matrix w = DensityMatrix::max_entangled(2).matrix();
  CHECK(coherent_information_state(w, {2, 2}) == doctest::Approx(1.0));

  Rng rng(2);
  const auto a = DensityMatrix::random(2, rng), b = DensityMatrix::random(3, rng);
  const Matrix ab = kron(a.matrix(), b.matrix());
  CHECK(coherent_information_state(ab, {2, 3}) == doctest::Approx(-von_neumann(a)));
  CHECK(conditional_entropy(ab, {2, 3}) == doctest::Approx(von_neumann(a)));

  for (int trial = 0; trial < 10; ++trial) {
    const Matrix psi = DensityMatrix(PureState::random(6, rng)).matrix();
    const double ic = coherent_information_state(psi, {2, 3});
    CHECK(ic == doctest::Approx(von_neumann(partial_trace(psi, {2, 3}, {1}))).epsilon(1e-9));
    CHECK(std::abs(ic) <= 1.0 + 1e-9);
  }
}

TEST_CASE("coherent information of channels") {
  const Matrix w = DensityMatrix::max_entangled(2).matrix();
  CHECK(coherent_information_channel(w, QuantumChannel::identity(2)) == doctest::Approx(1.0));

  for (double lambda : {0.0, 0.3, 0.8, 0.95}) {
    RealVector spec(4);
    spec << (1 + 3 * lambda) / 4, (1 - lambda) / 4, (1 - lambda) / 4, (1 - lambda) / 4;
    const double expected = 1.0 - shannon_entropy(spec);
    CHECK(coherent_information_channel(w, QuantumChannel::depolarizing(lambda, 2)) ==
          doctest::Approx(expected).epsilon(1e-10));
  }

  // Approaches log d as t → 0 along a semigroup.
  Rng rng(3);
  const auto l = from_channel(QuantumChannel::random(3, 3, 2, rng));
  const Matrix w3 = DensityMatrix::max_entangled(3).matrix();
  double previous = -10.0;
  for (int k = 1; k <= 6; ++k) {
    const double ic = coherent_information_channel(w3, semigroup_channel(l, std::pow(10.0, -k)));
    CHECK(ic > previous);
    previous = ic;
  }
  CHECK(previous == doctest::Approx(std::log2(3.0)).epsilon(1e-3));
}

TEST_CASE("subadditivity and Araki–Lieb") {
  Rng rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    const Index da = 2 + trial % 2, db = 2 + (trial / 2) % 2;
    const Matrix rho = DensityMatrix::random(da * db, 1 + trial % (da * db), rng).matrix();
    const double sab = von_neumann(rho);
    const double sa = von_neumann(partial_trace(rho, {da, db}, {0}));
    const double sb = von_neumann(partial_trace(rho, {da, db}, {1}));
    CHECK(sab <= sa + sb + 1e-9);
    CHECK(std::abs(sa - sb) <= sab + 1e-9);
  }
}

TEST_CASE("Holevo chi") {
  Rng rng(5);
  CHECK(std::abs(holevo_chi(Ensemble(RealVector::Ones(1), {DensityMatrix::random(3, rng)}))) < 1e-12);
  std::vector<DensityMatrix> basis;
  for (Index i = 0; i < 4; ++i) basis.emplace_back(PureState::basis(4, i));
  CHECK(holevo_chi(Ensemble(RealVector::Constant(4, 0.25), basis)) == doctest::Approx(2.0));

  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + trial % 3;
    RealVector p(n);
    for (Index i = 0; i < n; ++i) p(i) = rng.uniform() + 0.01;
    p /= p.sum();
    std::vector<DensityMatrix> states;
    for (Index i = 0; i < n; ++i) states.push_back(DensityMatrix::random(3, 1 + i % 3, rng));
    const Ensemble e(p, states);
    const auto t = QuantumChannel::random(3, 2 + trial % 2, 2 + trial % 3, rng);
    const double chi = holevo_chi(e);
    CHECK(chi >= -1e-12);
    CHECK(chi <= std::log2(3.0) + 1e-12);
    CHECK(holevo_chi(apply(t, e)) <= chi + 1e-9);
  }
  CHECK_THROWS(Ensemble(RealVector::Constant(2, 0.4), {basis[0], basis[1]}));
}

TEST_CASE("binary entropy and Fannes–Audenaert") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK_THROWS(binary_entropy(1.5));
  CHECK(fannes_audenaert_bound(0.0, 3) == 0.0);
  CHECK(fannes_audenaert_bound(0.5, 2) == doctest::Approx(1.5));

  Rng rng(6);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index d = 2 + trial % 7;
    const auto rho = DensityMatrix::random(d, 1 + trial % d, rng);
    const auto sigma = DensityMatrix::random(d, 1 + (trial / 3) % d, rng);
    const double delta = trace_distance(rho, sigma);
    CHECK(std::abs(von_neumann(rho) - von_neumann(sigma)) <= fannes_audenaert_bound(delta, d) + 1e-12);
  }
}

TEST_CASE("continuity capacity bound") {
  CHECK(continuity_capacity_bound(1.0, 2) == doctest::Approx(16.0));
  CHECK(continuity_capacity_bound(0.5, 2) == doctest::Approx(12.0));
  double previous = 0.0;
  for (double e = 0.01; e <= 0.5; e += 0.01) {
    const double v = continuity_capacity_bound(e, 3);
    CHECK(v > previous);
    previous = v;
  }
  CHECK_THROWS(continuity_capacity_bound(0.0, 2));
}

TEST_CASE("min-entropy matches analytic values") {
  Rng rng(7);
  for (Index da : {2, 3, 4})
    for (Index db : {2, 3, 4}) {
      const auto a = DensityMatrix::random(da, rng);
      const auto b = DensityMatrix::random(db, rng);
      const double lmax = herm_eigenvalues(a.matrix())(0);
      CHECK(std::abs(min_entropy(kron(a.matrix(), b.matrix()), {da, db}) + std::log2(lmax)) <= 1e-6);

      // σ = 𝟙/(d_A d_B) is optimal, so the value is log d_A.
      const Matrix mixed = Matrix::Identity(da * db, da * db) / double(da * db);
      CHECK(std::abs(min_entropy(mixed, {da, db}) - std::log2(double(da))) <= 1e-6);
    }
  for (Index d : {2, 3, 4}) {
    const Matrix w = DensityMatrix::max_entangled(d).matrix();
    CHECK(std::abs(min_entropy(w, {d, d}) + std::log2(double(d))) <= 1e-6);
  }
}

TEST_CASE("min-entropy lower bound and certificate") {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const Index da = 2 + trial % 2, db = 2 + (trial / 2) % 3;
    const Matrix rho = DensityMatrix::random(da * db, 1 + trial % 3, rng).matrix();
    const auto res = min_entropy_solve(rho, {da, db});
    CHECK(res.value >= -std::log2(double(db)) - 1e-9);
    CHECK(res.dual <= res.primal + 1e-12);
    // The returned σ is feasible.
    const Matrix slack = kron(Matrix(Matrix::Identity(da, da)), res.sigma) - rho;
    CHECK(herm_eigenvalues(slack).minCoeff() >= -1e-9);
  }
  CHECK_THROWS_AS(min_entropy(Matrix::Identity(81, 81) / 81.0, {9, 9}), DimensionError);
}

TEST_CASE("typical projectors") {
  const DensityMatrix pure(PureState::basis(2, 1));
  const TypicalConfig cfg{0.2};
  const Matrix pi_pure = typical_projector(pure, 3, cfg);
  CHECK(pi_pure.trace().real() == doctest::Approx(1.0));
  CHECK(std::abs(pi_pure(7, 7) - 1.0) < 1e-14);

  const Matrix pi_mixed = typical_projector(DensityMatrix::maximally_mixed(3), 3, cfg);
  CHECK((pi_mixed - Matrix::Identity(27, 27)).norm() < 1e-12);

  const auto rho0 = DensityMatrix::diagonal(qubit_probs(0.75));
  const auto typ = typical_subspace(rho0, 10, cfg);
  CHECK(typ.p_typical == doctest::Approx(binomial_typical(0.75, 10, 0.2)).epsilon(1e-12));
  const Matrix pi = typ.projector();
  Matrix rho_nu = Matrix::Identity(1, 1);
  for (int i = 0; i < 10; ++i) rho_nu = kron(rho_nu, rho0.matrix());
  CHECK((pi * pi - pi).norm() < 1e-10);
  CHECK(std::abs((pi * rho_nu).trace().real() - typ.p_typical) < 1e-12);
  CHECK((pi * rho_nu - rho_nu * pi).norm() < 1e-12);
  CHECK(pi.trace().real() <= std::pow(2.0, 10 * (binary_entropy(0.25) + 0.2)) + 1e-9);

  // Non-diagonal ρ0: commutes with ρ0^{⊗ν}.
  Rng rng(9);
  const auto r = DensityMatrix::random(2, rng);
  const Matrix pr = typical_projector(r, 4, TypicalConfig{0.3});
  const Matrix r4 = kron(kron(r.matrix(), r.matrix()), kron(r.matrix(), r.matrix()));
  CHECK((pr * r4 - r4 * pr).norm() < 1e-12);

  // Law of large numbers along ν = 4, 8, 12 at δ = 0.3 (exact oracle values
  // 0.4219, 0.7861, 0.9139; at δ = 0.2 the sequence is not monotone).
  double previous = 0.0;
  for (Index nu : {4, 8, 12}) {
    const double p = typical_subspace(rho0, nu, TypicalConfig{0.3}).p_typical;
    CHECK(p == doctest::Approx(binomial_typical(0.75, int(nu), 0.3)).epsilon(1e-12));
    CHECK(p >= previous);
    previous = p;
  }
  CHECK_THROWS_AS(typical_subspace(rho0, 13, cfg), DimensionError);
  CHECK(fitted_c_prime(typ, 0.2) > 0.0);
}

TEST_CASE("Schumacher compression") {
  const TypicalConfig cfg{0.2};
  const auto pure = schumacher_compress(DensityMatrix(PureState::basis(2, 0)), 4, cfg);
  CHECK(pure.n_compressed == 0);
  CHECK(pure.p_typical == doctest::Approx(1.0));

  CHECK(schumacher_compress(DensityMatrix::maximally_mixed(2), 5, cfg).n_compressed == 5);

  const auto rho0 = DensityMatrix::diagonal(qubit_probs(0.75));
  const auto code = schumacher_compress(rho0, 10, cfg);
  CHECK(code.n_compressed <= static_cast<Index>(std::ceil(10 * (binary_entropy(0.25) + 0.2))));
  const Index total = 1024;
  CHECK((code.unitary.adjoint() * code.unitary - Matrix::Identity(total, total)).cwiseAbs().maxCoeff() < 1e-12);

  // The typical subspace lands on |k⟩ ⊗ |0…0⟩ (trailing 10 - n_c qubits in |0⟩).
  const Matrix pi = typical_projector(rho0, 10, cfg);
  const Matrix moved = code.unitary * pi * code.unitary.adjoint();
  const Index stride = total >> code.n_compressed;
  double off = 0.0;
  for (Index i = 0; i < total; ++i)
    if (i % stride != 0) off += std::abs(moved(i, i));
  CHECK(off < 1e-12);
  CHECK(std::abs(moved.trace().real() - pi.trace().real()) < 1e-10);
}

TEST_CASE("truncated Choi purification") {
  Rng rng(10);
  const auto u = QuantumChannel::unitary(haar_unitary(2, rng));
  const auto exact = truncated_choi_purification(u, 2, TypicalConfig{0.1});
  CHECK(exact.trace_dist < 1e-7);
  CHECK(exact.env_rank_bound == 1);

  const auto dep = QuantumChannel::pauli_depolarizing();
  const auto all = truncated_choi_purification(dep, 1, TypicalConfig{10.0});
  CHECK(all.trace_dist < 1e-7);
  // σ^E of the Pauli map is maximally mixed, so every sequence is typical.
  CHECK(truncated_choi_purification(dep, 3, TypicalConfig{0.3}).trace_dist < 1e-7);

  const auto noisy = QuantumChannel::depolarizing(0.6, 2);
  // σ^E has spectrum (0.7, 0.1, 0.1, 0.1); δ = 0.6 keeps one sequence type
  // for m = 2 and m = 3.
  for (Index m : {2, 3}) {
    const TypicalConfig cfg{0.6};
    const auto res = truncated_choi_purification(noisy, m, cfg);
    CHECK(res.p_typical < 1.0);
    CHECK(res.trace_dist == doctest::Approx(2.0 * std::sqrt(1.0 - res.p_typical)).epsilon(1e-9));
    const double s_env = von_neumann(complementary(noisy).apply(Matrix::Identity(2, 2) / 2.0));
    CHECK(double(res.env_rank_bound) <= std::pow(2.0, m * (s_env + cfg.delta)) + 1e-9);

    const Index d_env = static_cast<Index>(noisy.kraus().size());
    Vector one = choi_purification(noisy);
    Vector full = Vector::Ones(1);
    for (Index i = 0; i < m; ++i) full = kron(full, one);
    // Environment rank of the truncated state.
    Dims dims;
    for (Index i = 0; i < m; ++i) dims.insert(dims.end(), {2, 2, d_env});
    std::vector<Index> env;
    for (Index i = 0; i < m; ++i) env.push_back(3 * i + 2);
    const Matrix proj = res.state.projector();
    const RealVector env_spec = herm_eigenvalues(partial_trace(proj, dims, env));
    Index rank = 0;
    for (Index k = 0; k < env_spec.size(); ++k) rank += env_spec(k) > 1e-10;
    CHECK(rank <= res.env_rank_bound);
    if (m == 2) {
      // Brute-force trace norm of the 256-dimensional difference.
      const double brute = trace_norm(proj - full * full.adjoint());
      CHECK(res.trace_dist == doctest::Approx(brute).epsilon(1e-8));
    }
  }
}

TEST_CASE("entropy growth under local depolarizing semigroups") {
  Rng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const Index d = trial % 3 == 2 ? 3 : 2;
    const Index m = d == 3 ? 1 + trial % 2 : 1 + trial % 3;
    Index total = 1;
    for (Index i = 0; i < m; ++i) total *= d;
    const auto rho0 = DensityMatrix::random(d, 1 + trial % d, rng);
    const auto rho = DensityMatrix::random(total, 1 + trial % total, rng);
    const double r = 0.5 + rng.uniform(), t = 2.0 * rng.uniform();
    const double p = std::exp(-r * t);
    // T_t(X) = p X + (1 − p) tr(X) ρ0 applied on each factor.
    std::vector<Matrix> kraus;
    kraus.push_back(std::sqrt(p) * Matrix::Identity(d, d));
    const auto eig = herm_eig(rho0.matrix());
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j)
        if (eig.values(i) > 0)
          kraus.push_back(std::sqrt((1 - p) * eig.values(i)) * eig.vectors.col(i) *
                          PureState::basis(d, j).amplitudes().adjoint());
    const auto step = QuantumChannel::from_kraus(kraus);
    const auto semigroup = semigroup_channel(depolarizing_liouvillian(r, rho0), t);
    CHECK((step.superoperator() - semigroup.superoperator()).norm() < 1e-10);
    const double lhs = von_neumann(tensor_power(step, m).apply(rho.matrix()));
    const double rhs = p * von_neumann(rho) + (1 - p) * double(m) * von_neumann(rho0);
    CHECK(lhs >= rhs - 1e-9);
  }
}
