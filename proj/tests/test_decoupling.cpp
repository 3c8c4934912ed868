#include "doctest.h"

#include "qsub/decoupling.hpp"
#include "qsub/entropy.hpp"

#include <cmath>
#include <cstdlib>

using namespace qsub;

namespace {

Isometry identity_isometry(Index d) { return Isometry(Matrix::Identity(d, d)); }

DensityMatrix env_average(const QuantumChannel& t) {
  const Index d = t.d_in();
  return DensityMatrix(complementary(t).apply(Matrix::Identity(d, d) / double(d)));
}

DensityMatrix random_pure(Index d, Rng& rng) { return DensityMatrix(PureState::random(d, rng)); }

}  // namespace

TEST_CASE("decoupling experiment statistics") {
  const auto cd = QuantumChannel::completely_depolarizing(2);
  const auto omega = DensityMatrix::max_entangled(2);
  const auto run = decoupling_experiment(cd, omega, identity_isometry(2), 50, Rng(3), "cd");
  CHECK(run.n_samples() == 50);
  CHECK(run.channel == "cd");
  CHECK(run.d_reference == 2);
  CHECK(run.min <= run.mean);
  CHECK(run.mean <= run.max);

  // The maximally entangled probe absorbs U, so every sample equals the
  // distance of the complementary Choi state from its product form.
  const auto tc = complementary(cd);
  const Matrix choi = superop_to_choi(kraus_to_superop(tc.kraus()), 2, tc.d_out());
  const double expected = trace_norm(choi - kron(Matrix(Matrix::Identity(2, 2) / 2.0), env_average(cd).matrix()));
  for (double s : run.samples) CHECK(std::abs(s - expected) < 1e-10);

  Rng rng(8);
  const auto probe = DensityMatrix::random(4, 2, rng);
  const auto ch = QuantumChannel::random(2, 2, 3, rng);
  const auto r2 = decoupling_experiment(ch, probe, identity_isometry(2), 40, Rng(11));
  double sum = 0.0, lo = 1e9, hi = -1e9;
  for (double s : r2.samples) {
    sum += s;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  const double mean = sum / 40.0;
  double ss = 0.0;
  for (double s : r2.samples) ss += (s - mean) * (s - mean);
  CHECK(r2.mean == doctest::Approx(mean).epsilon(1e-14));
  CHECK(r2.min == lo);
  CHECK(r2.max == hi);
  CHECK(r2.standard_error() == doctest::Approx(std::sqrt(ss / 39.0 / 40.0)).epsilon(1e-12));
  CHECK(r2.standard_error() > 0.0);

  CHECK_THROWS(decoupling_experiment(cd, omega, identity_isometry(2), 0, Rng(1)));
  CHECK_THROWS_AS(decoupling_experiment(cd, omega, identity_isometry(3), 5, Rng(1)), DimensionError);
  CHECK_THROWS_AS(
      decoupling_experiment(QuantumChannel::identity(16), DensityMatrix::max_entangled(16), identity_isometry(16), 1, Rng(1)),
      DimensionError);
}

TEST_CASE("decoupling determinism") {
  Rng rng(21);
  const auto probe = DensityMatrix::random(4, 3, rng);
  const auto ch = QuantumChannel::amplitude_damping(0.4);
  const auto a = decoupling_experiment(ch, probe, identity_isometry(2), 30, Rng(99));
  const auto b = decoupling_experiment(ch, probe, identity_isometry(2), 30, Rng(99));
  CHECK(a.samples == b.samples);
  const auto c = decoupling_experiment(ch, probe, identity_isometry(2), 30, Rng(100));
  CHECK(a.samples != c.samples);

  // Independent of the worker count.
  const char* saved = std::getenv("THREADS");
  const std::string restore = saved ? saved : "";
  setenv("THREADS", "3", 1);
  const auto threaded = decoupling_experiment(ch, probe, identity_isometry(2), 30, Rng(99));
  setenv("THREADS", "1", 1);
  const auto serial = decoupling_experiment(ch, probe, identity_isometry(2), 30, Rng(99));
  if (saved)
    setenv("THREADS", restore.c_str(), 1);
  else
    unsetenv("THREADS");
  CHECK(threaded.samples == a.samples);
  CHECK(serial.samples == a.samples);
}

TEST_CASE("decoupling bound") {
  Rng rng(5);
  // Unitary channels have a trivial environment.
  for (int trial = 0; trial < 3; ++trial) {
    const auto u = QuantumChannel::unitary(haar_unitary(2, rng));
    const auto probe = random_pure(4, rng);
    const auto run = decoupling_experiment(u, probe, identity_isometry(2), 20, Rng(trial));
    for (double s : run.samples) CHECK(s < 1e-12);
    const auto check = decoupling_bound_check(run, probe, u);
    CHECK(check.pass);
    CHECK(check.lhs_mean < 1e-12);
  }
  // Unitary with ω: H_min(A'|E) = log d, H_min(A|R') = −log d.
  const auto u = QuantumChannel::unitary(haar_unitary(2, rng));
  CHECK(decoupling_bound(u, DensityMatrix::max_entangled(2), identity_isometry(2)) == doctest::Approx(1.0).epsilon(1e-7));

  // Explicit exponents.
  const auto ch = QuantumChannel::depolarizing(0.5, 2);
  const auto probe = DensityMatrix::random(4, 2, rng);
  const auto tc = complementary(ch);
  const double h1 = min_entropy(tc.choi(), {2, tc.d_out()});
  const double h2 = min_entropy(permute_subsystems(probe.matrix(), {2, 2}, {1, 0}), {2, 2});
  CHECK(decoupling_bound(ch, probe, identity_isometry(2)) == doctest::Approx(std::exp2(-0.5 * h1 - 0.5 * h2)));

  const auto run = decoupling_experiment(ch, DensityMatrix::max_entangled(2), identity_isometry(2), 200, Rng(1));
  CHECK(decoupling_bound_check(run, DensityMatrix::max_entangled(2), ch).pass);
  CHECK(run.bound == doctest::Approx(decoupling_bound(ch, DensityMatrix::max_entangled(2), identity_isometry(2))));

  // Random instances, including an encoding isometry.
  for (int trial = 0; trial < 4; ++trial) {
    const auto t = QuantumChannel::random(4, 4 - 2 * (trial % 2), 2, rng);
    const Isometry v(haar_isometry(2, 4, rng));
    const auto p = DensityMatrix::random(4, 1 + trial % 3, rng);
    const auto r = decoupling_experiment(t, p, v, 60, Rng(trial));
    CHECK(decoupling_bound_check(r, p, t).pass);
  }
  CHECK_THROWS_AS(decoupling_bound_check(run, DensityMatrix::max_entangled(3), ch), DimensionError);
}

TEST_CASE("decoupling along the depolarizing family") {
  Rng rng(31);
  const auto probe = DensityMatrix::random(4, 2, rng);
  double previous_mean = 1e9, previous_entropy = 1e9;
  for (double lambda : {0.2, 0.5, 0.8, 0.95}) {
    const auto ch = QuantumChannel::depolarizing(lambda, 2);
    const double s_env = von_neumann(env_average(ch));
    const auto run = decoupling_experiment(ch, probe, identity_isometry(2), 100, Rng(77));
    CHECK(s_env <= previous_entropy + 1e-12);
    CHECK(run.mean <= previous_mean + 1e-12);
    previous_entropy = s_env;
    previous_mean = run.mean;
  }
}

TEST_CASE("Uhlmann decoder") {
  Rng rng(13);
  CHECK(uhlmann_error_bound(0.0) == 0.0);
  CHECK(uhlmann_error_bound(2.0) == doctest::Approx(2.0));

  // Unitary: the decoder inverts it.
  const Matrix u = haar_unitary(2, rng);
  const auto uch = QuantumChannel::unitary(u);
  const auto omega = DensityMatrix::max_entangled(2);
  const auto dec = uhlmann_decoder(uch, env_average(uch), omega);
  CHECK(dec.epsilon < 1e-9);
  CHECK(dec.decode_error < 1e-9);
  CHECK((compose(dec.decoder, uch).superoperator() - Matrix::Identity(4, 4)).norm() < 1e-9);

  // The identity channel also has a one-dimensional environment.
  const auto id = QuantumChannel::identity(2);
  const auto did = uhlmann_decoder(id, env_average(id), omega);
  CHECK(did.epsilon < 1e-9);
  CHECK(did.decode_error <= uhlmann_error_bound(did.epsilon) + 1e-8);

  const auto dep = QuantumChannel::depolarizing(0.95, 2);
  const auto ddep = uhlmann_decoder(dep, env_average(dep), omega);
  CHECK(ddep.decode_error <= uhlmann_error_bound(ddep.epsilon) + 1e-8);
  CHECK(ddep.decoder.d_in() == 2);
  CHECK(ddep.decoder.d_out() == 2);

  // Decoder is CPTP and its error matches the Uhlmann fidelity.
  for (int trial = 0; trial < 12; ++trial) {
    const Index d_a = trial % 2 ? 2 : 3;
    const Index d_b = 2 + trial % 3;
    const Index n_kraus = std::max<Index>(1 + trial % 4, (d_a + d_b - 1) / d_b);
    const auto t = QuantumChannel::random(d_a, d_b, n_kraus, rng);
    const Index d_r = 1 + trial % 3;
    const auto probe = trial % 3 == 0 ? random_pure(d_r * d_a, rng) : DensityMatrix::random(d_r * d_a, rng);
    const auto sigma = trial % 2 ? env_average(t) : DensityMatrix::random(static_cast<Index>(t.kraus().size()), rng);
    const auto out = uhlmann_decoder(t, sigma, probe);
    Matrix sum = Matrix::Zero(d_b, d_b);
    for (const auto& k : out.decoder.kraus()) sum += k.adjoint() * k;
    CHECK((sum - Matrix::Identity(d_b, d_b)).norm() < 1e-8);
    CHECK(out.decode_error <= uhlmann_error_bound(out.epsilon) + 1e-8);

    // Pure probes: the decoded state is within the purified distance of the
    // environment marginals.
    if (trial % 3 == 0) {
      const auto tc = complementary(t);
      const Matrix joint = apply_local(tc, probe.matrix(), d_r);
      const Matrix ref = partial_trace(probe.matrix(), {d_r, d_a}, {0});
      const double f = fidelity(joint, kron(ref, sigma.matrix()));
      CHECK(out.decode_error <= 2.0 * std::sqrt(std::max(0.0, 1.0 - f * f)) + 1e-8);
      CHECK(out.epsilon == doctest::Approx(trace_norm(joint - kron(ref, sigma.matrix()))).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(uhlmann_decoder(dep, DensityMatrix::maximally_mixed(7), omega), DimensionError);
}

TEST_CASE("information-disturbance probe") {
  Rng rng(17);
  const Matrix u = haar_unitary(2, rng);
  const auto omega = DensityMatrix::max_entangled(2);
  const auto p = information_disturbance_probe(QuantumChannel::unitary(u), QuantumChannel::unitary(u.adjoint()), omega);
  CHECK(p.forgetfulness < 1e-10);
  CHECK(p.decode_error < 1e-10);
  CHECK(p.evaluated);
  CHECK(p.pass);

  const auto dep = QuantumChannel::depolarizing(0.98, 2);
  const auto dec = uhlmann_decoder(dep, env_average(dep), omega);
  const auto q = information_disturbance_probe(dep, dec.decoder, omega);
  CHECK(q.evaluated);
  CHECK(q.pass);
  CHECK(q.decode_error == doctest::Approx(dec.decode_error).epsilon(1e-9));

  // A decoder that discards the input is not compared.
  const auto junk = QuantumChannel::replacement(DensityMatrix(PureState::basis(2, 0)), 2);
  const auto r = information_disturbance_probe(QuantumChannel::identity(2), junk, omega);
  CHECK(r.decode_error > 1.0);
  CHECK_FALSE(r.evaluated);
  CHECK(r.pass);
  CHECK_THROWS_AS(information_disturbance_probe(dep, QuantumChannel::identity(3), omega), DimensionError);
}
