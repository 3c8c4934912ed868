#pragma once

#include "qsub/channel.hpp"
#include "qsub/random.hpp"
#include "qsub/states.hpp"

#include <string>
#include <vector>

namespace qsub {

/// Monte-Carlo estimate of the Haar average of
/// ‖(id ⊗ T^c∘U∘V)(ρ) − ρ^{R'} ⊗ σ^E‖₁ with σ^E = T^c(𝟙/d_A).
struct DecouplingRun {
  std::string channel;
  DensityMatrix probe;  // on R'⊗R
  Index d_reference;    // R'
  Isometry embedding;   // R → A
  std::vector<double> samples;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  /// Decoupling bound for this channel and probe.
  double bound = 0.0;

  Index n_samples() const { return static_cast<Index>(samples.size()); }
  double standard_error() const;
};

inline constexpr Index kMaxDecouplingInput = 8;

/// Sample k uses rng.substream(k), so results do not depend on scheduling.
DecouplingRun decoupling_experiment(const QuantumChannel& t, const DensityMatrix& probe, const Isometry& v,
                                    Index n_samples, const Rng& rng, std::string channel_name = "");

/// 2^{−½ H_min(A'|E)_σ − ½ H_min(A|R')_ρ} with σ the Choi state of T^c and ρ
/// the encoded probe.
double decoupling_bound(const QuantumChannel& t, const DensityMatrix& probe, const Isometry& v);

struct DecouplingCheck {
  double lhs_mean;
  double rhs;
  double standard_error;
  bool pass;
};
/// Passes when the sample mean is within three standard errors below the bound.
DecouplingCheck decoupling_bound_check(const DecouplingRun& run, const DensityMatrix& probe,
                                       const QuantumChannel& t);

struct UhlmannDecoder {
  QuantumChannel decoder;  // B → A
  /// ‖(id ⊗ T^c)(ψ) − ψ^R ⊗ σ‖₁ on the purified probe.
  double epsilon;
  /// ‖(id ⊗ D∘T)(ψ) − ψ‖₁ on the purified probe.
  double decode_error;
};

/// 2√(ε(1 − ε/4)).
double uhlmann_error_bound(double epsilon);

/// Decoder from aligning the purifications of (id ⊗ T^c)(ψ) and ψ^R ⊗ σ,
/// where ψ purifies the probe on R⊗A (the purifying system joins R).
UhlmannDecoder uhlmann_decoder(const QuantumChannel& t, const DensityMatrix& sigma_env,
                               const DensityMatrix& probe);

struct DisturbanceProbe {
  double forgetfulness;
  double decode_error;
  /// False when decode_error > 1, where the comparison is not made.
  bool evaluated;
  bool pass;
};
/// forgetfulness = ‖(id ⊗ T^c)(ρ) − ρ^R ⊗ ρ^E‖₁, decode_error =
/// ‖(id ⊗ D∘T)(ρ) − ρ‖₁; pass ⇔ forgetfulness ≤ 2√decode_error + 1e-8.
DisturbanceProbe information_disturbance_probe(const QuantumChannel& t, const QuantumChannel& d,
                                               const DensityMatrix& probe);

}  // namespace qsub
