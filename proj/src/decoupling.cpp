#include "qsub/decoupling.hpp"

#include "qsub/entropy.hpp"
#include "qsub/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qsub {

double DecouplingRun::standard_error() const {
  const double n = static_cast<double>(samples.size());
  if (n < 2) return 0.0;
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  return std::sqrt(ss / (n - 1) / n);
}

namespace {

struct Layout {
  Index d_reference;
  Index d_input;
  Index d_code;
};

Layout check_layout(const QuantumChannel& t, const DensityMatrix& probe, const Isometry& v) {
  if (v.d_to() != t.d_in()) throw DimensionError("decoupling: embedding does not match channel input");
  if (t.d_in() > kMaxDecouplingInput) throw DimensionError("decoupling: channel input too large");
  if (probe.dim() % v.d_from() != 0) throw DimensionError("decoupling: probe does not contain the input system");
  return {probe.dim() / v.d_from(), v.d_from(), v.d_to()};
}

Matrix encode(const DensityMatrix& probe, const Isometry& v, Index d_reference) {
  const Matrix op = kron(Matrix(Matrix::Identity(d_reference, d_reference)), v.matrix());
  return op * probe.matrix() * op.adjoint();
}

}  // namespace

double decoupling_bound(const QuantumChannel& t, const DensityMatrix& probe, const Isometry& v) {
  const Layout lay = check_layout(t, probe, v);
  const QuantumChannel tc = complementary(t);
  const double h_env = min_entropy(tc.choi(), {lay.d_code, tc.d_out()});
  const Matrix encoded = encode(probe, v, lay.d_reference);
  const Matrix swapped = permute_subsystems(encoded, {lay.d_reference, lay.d_code}, {1, 0});
  const double h_probe = min_entropy(swapped, {lay.d_code, lay.d_reference});
  return std::exp2(-0.5 * h_env - 0.5 * h_probe);
}

DecouplingRun decoupling_experiment(const QuantumChannel& t, const DensityMatrix& probe, const Isometry& v,
                                    Index n_samples, const Rng& rng, std::string channel_name) {
  if (n_samples < 1) throw std::invalid_argument("decoupling_experiment: need at least one sample");
  const Layout lay = check_layout(t, probe, v);
  const QuantumChannel tc = complementary(t);
  const Index d = lay.d_code;
  const Matrix sigma_env = tc.apply(Matrix::Identity(d, d) / static_cast<double>(d));
  const Matrix rho_ref = partial_trace(probe.matrix(), {lay.d_reference, lay.d_input}, {0});
  const Matrix target = kron(rho_ref, sigma_env);
  const Matrix encoded = encode(probe, v, lay.d_reference);
  const Matrix ref_id = Matrix::Identity(lay.d_reference, lay.d_reference);

  std::vector<double> samples(static_cast<std::size_t>(n_samples));
  parallel_for(samples.size(), [&](std::size_t k) {
    Rng sub = rng.substream(k);
    const Matrix u = kron(ref_id, haar_unitary(d, sub));
    const Matrix out = apply_local(tc, u * encoded * u.adjoint(), lay.d_reference);
    samples[k] = trace_norm(out - target);
  });

  DecouplingRun run{std::move(channel_name), probe, lay.d_reference, v, std::move(samples)};
  run.mean = std::accumulate(run.samples.begin(), run.samples.end(), 0.0) / static_cast<double>(n_samples);
  run.min = *std::min_element(run.samples.begin(), run.samples.end());
  run.max = *std::max_element(run.samples.begin(), run.samples.end());
  run.bound = decoupling_bound(t, probe, v);
  return run;
}

DecouplingCheck decoupling_bound_check(const DecouplingRun& run, const DensityMatrix& probe,
                                       const QuantumChannel& t) {
  if (probe.dim() != run.probe.dim()) throw DimensionError("decoupling_bound_check: probe does not match run");
  DecouplingCheck out;
  out.lhs_mean = run.mean;
  out.rhs = decoupling_bound(t, probe, run.embedding);
  out.standard_error = run.standard_error();
  out.pass = out.lhs_mean <= out.rhs + 3.0 * out.standard_error;
  return out;
}

double uhlmann_error_bound(double epsilon) { return 2.0 * std::sqrt(std::max(0.0, epsilon * (1.0 - epsilon / 4.0))); }

UhlmannDecoder uhlmann_decoder(const QuantumChannel& t, const DensityMatrix& sigma_env, const DensityMatrix& probe) {
  const Index d_a = t.d_in();
  const Index d_b = t.d_out();
  const Index d_e = static_cast<Index>(t.kraus().size());
  if (probe.dim() % d_a != 0) throw DimensionError("uhlmann_decoder: probe does not contain the input system");
  if (sigma_env.dim() != d_e) throw DimensionError("uhlmann_decoder: target has the wrong environment dimension");
  const Index d_r = probe.dim() / d_a;
  if (probe.dim() * d_e > 1024) throw DimensionError("uhlmann_decoder: reference and environment too large");

  // Purify the probe; the purifying system S is appended to the reference.
  const HermEig eig = herm_eig(probe.matrix());
  Index d_s = 0;
  while (d_s < eig.values.size() && eig.values(d_s) > 1e-14) ++d_s;
  const Index d_x = d_r * d_s;
  Matrix psi(d_x, d_a);
  for (Index r = 0; r < d_r; ++r)
    for (Index k = 0; k < d_s; ++k)
      for (Index a = 0; a < d_a; ++a)
        psi(r * d_s + k, a) = std::sqrt(eig.values(k)) * eig.vectors(r * d_a + a, k);

  // Actual purification with rows (x, e) and the decoder's input B as columns.
  const Matrix full = psi * stinespring(t).matrix().transpose();
  Matrix actual(d_x * d_e, d_b);
  for (Index x = 0; x < d_x; ++x)
    for (Index e = 0; e < d_e; ++e)
      for (Index b = 0; b < d_b; ++b) actual(x * d_e + e, b) = full(x, b * d_e + e);

  // Target purification ψ ⊗ φ_σ with columns (a, e').
  const Index d_pad = std::max(d_e, (d_b + d_a - 1) / d_a);
  const HermEig sig = herm_eig(sigma_env.matrix());
  Matrix phi = Matrix::Zero(d_e, d_pad);
  for (Index i = 0; i < d_e; ++i) phi.col(i) = std::sqrt(std::max(0.0, sig.values(i))) * sig.vectors.col(i);
  const Matrix target = kron(psi, phi);

  const Matrix overlap = target.adjoint() * actual;
  Eigen::JacobiSVD<Matrix> svd(overlap, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Matrix w = svd.matrixU().conjugate() * svd.matrixV().transpose();

  std::vector<Matrix> kraus;
  for (Index p = 0; p < d_pad; ++p) {
    Matrix k(d_a, d_b);
    for (Index a = 0; a < d_a; ++a) k.row(a) = w.row(a * d_pad + p);
    if (k.norm() > 1e-14) kraus.push_back(std::move(k));
  }

  UhlmannDecoder out{QuantumChannel::from_kraus(std::move(kraus)), 0.0, 0.0};
  out.epsilon = trace_norm(actual * actual.adjoint() - kron(Matrix(psi * psi.adjoint()), sigma_env.matrix()));
  const Vector pure = vec(Matrix(psi.transpose()));
  const Matrix rho = pure * pure.adjoint();
  const Matrix decoded = apply_local(out.decoder, apply_local(t, rho, d_x), d_x);
  out.decode_error = trace_norm(decoded - rho);
  return out;
}

DisturbanceProbe information_disturbance_probe(const QuantumChannel& t, const QuantumChannel& d,
                                               const DensityMatrix& probe) {
  if (d.d_in() != t.d_out() || d.d_out() != t.d_in())
    throw DimensionError("information_disturbance_probe: decoder does not invert the channel's shape");
  if (probe.dim() % t.d_in() != 0) throw DimensionError("information_disturbance_probe: probe mismatch");
  const Index d_r = probe.dim() / t.d_in();
  const QuantumChannel tc = complementary(t);
  const Matrix joint = apply_local(tc, probe.matrix(), d_r);
  const Matrix rho_ref = partial_trace(probe.matrix(), {d_r, t.d_in()}, {0});
  const Matrix rho_env = partial_trace(joint, {d_r, tc.d_out()}, {1});

  DisturbanceProbe out;
  out.forgetfulness = trace_norm(joint - kron(rho_ref, rho_env));
  out.decode_error = trace_norm(apply_local(d, apply_local(t, probe.matrix(), d_r), d_r) - probe.matrix());
  out.evaluated = out.decode_error <= 1.0;
  out.pass = !out.evaluated || out.forgetfulness <= 2.0 * std::sqrt(out.decode_error) + 1e-8;
  return out;
}

}  // namespace qsub
