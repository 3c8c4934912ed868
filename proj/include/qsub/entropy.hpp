#pragma once

#include "qsub/channel.hpp"
#include "qsub/linalg.hpp"
#include "qsub/states.hpp"

#include <vector>

namespace qsub {

// All logarithms are base 2.

/// -Σ p log p over the positive entries.
double shannon_entropy(const RealVector& p);
double von_neumann(const DensityMatrix& rho);
/// Entropy of a Hermitian PSD matrix (clips eigenvalues below zero).
double von_neumann(const Matrix& rho);

/// S(A|B) = S(AB) - S(B) for dims = {d_A, d_B}.
double conditional_entropy(const Matrix& rho_ab, const Dims& dims);
/// S(B) - S(AB).
double coherent_information_state(const Matrix& rho_ab, const Dims& dims);
/// Coherent information of (id ⊗ T)(ρ) with ρ on A'⊗A.
double coherent_information_channel(const Matrix& rho, const QuantumChannel& t);

struct Ensemble {
  Ensemble(RealVector probabilities, std::vector<DensityMatrix> states);

  RealVector probabilities;
  std::vector<DensityMatrix> states;

  DensityMatrix average() const;
};

Ensemble apply(const QuantumChannel& t, const Ensemble& e);
double holevo_chi(const Ensemble& e);

double binary_entropy(double p);
/// δ log d + H(δ), valid for δ = ½‖ρ-σ‖₁.
double fannes_audenaert_bound(double delta, Index d);
/// 8εd_B + 4H(ε).
double continuity_capacity_bound(double epsilon, Index d_b);

/// Conditional min-entropy H_min(A|B) = -log min{tr σ : 𝟙_A⊗σ ≥ ρ}.
struct MinEntropyResult {
  double value;
  /// Primal optimum estimate tr σ and certified dual lower bound.
  double primal;
  double dual;
  Matrix sigma;
  int iterations;
};
MinEntropyResult min_entropy_solve(const Matrix& rho_ab, const Dims& dims, double gap_tol = 1e-10);
double min_entropy(const Matrix& rho_ab, const Dims& dims);

struct TypicalConfig {
  double delta = 0.1;
  /// Dimension exponent: tr Π ≤ 2^{ν(S + cδ)}. The construction here gives c = 1.
  double c = 1.0;
  /// Probability exponent: tr(Π ρ^{⊗ν}) ≥ 1 - 2^{-ν c' δ²}.
  double c_prime = 0.0;
};

/// Entropy-typical sequences x^ν of eigenvalue labels of ρ0:
/// |-(1/ν) log p(x^ν) - S(ρ0)| ≤ δ. Sequence index x_1 d^{ν-1} + … + x_ν.
struct TypicalSubspace {
  Index d;
  Index nu;
  RealVector probabilities;
  Matrix eigenbasis;
  std::vector<Index> sequences;
  std::vector<bool> is_typical;
  double p_typical;

  Index rank() const { return static_cast<Index>(sequences.size()); }
  Matrix projector() const;
};

inline constexpr Index kMaxTypicalDim = 4096;

TypicalSubspace typical_subspace(const DensityMatrix& rho0, Index nu, const TypicalConfig& cfg);
Matrix typical_projector(const DensityMatrix& rho0, Index nu, const TypicalConfig& cfg);
/// c' solving 1 - p_typical = 2^{-ν c' δ²}; +inf when every sequence is typical.
double fitted_c_prime(const TypicalSubspace& t, double delta);

/// U maps the typical subspace onto |k⟩ ⊗ |0…0⟩ with k < 2^{n_compressed} when d^ν is a
/// multiple of 2^{n_compressed}; otherwise onto the first basis states.
struct SchumacherCode {
  Matrix unitary;
  Index n_compressed;
  double p_typical;
};
SchumacherCode schumacher_compress(const DensityMatrix& rho0, Index nu, const TypicalConfig& cfg);

/// (𝟙 ⊗ 𝟙 ⊗ Π^E)|σ⟩^{⊗m} normalised, with |σ⟩ = (𝟙 ⊗ V)|ω⟩ on A'⊗B⊗E and the
/// m copies in order (A'BE)(A'BE)…
struct TruncatedPurification {
  PureState state;
  Index env_rank_bound;
  double trace_dist;
  double p_typical;
};
TruncatedPurification truncated_choi_purification(const QuantumChannel& t, Index m,
                                                  const TypicalConfig& cfg);
/// |σ⟩ = (𝟙 ⊗ V)|ω⟩ on A'⊗B⊗E.
Vector choi_purification(const QuantumChannel& t);

}  // namespace qsub
