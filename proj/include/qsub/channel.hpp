#pragma once

#include "qsub/linalg.hpp"
#include "qsub/random.hpp"
#include "qsub/states.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qsub {

/// Isometry V: C^{d_from} → C^{d_to} (V†V = I).
class Isometry {
 public:
  explicit Isometry(Matrix v, double tol = kStateTol);

  Index d_from() const { return v_.cols(); }
  Index d_to() const { return v_.rows(); }
  const Matrix& matrix() const { return v_; }

 private:
  Matrix v_;
};

/// Completely positive trace-preserving map M_{d_in} → M_{d_out}.
///
/// Kraus operators are the primary representation. The Choi matrix uses the
/// normalised convention J = (id ⊗ T)(ω) with the reference factor first, and
/// the superoperator acts on column-stacked vec(ρ). Both are cached at
/// construction when d_in·d_out ≤ kCacheLimit and recomputed otherwise.
class QuantumChannel {
 public:
  static constexpr Index kCacheLimit = 1024;

  /// Validates Σ K†K = I within `tol`.
  static QuantumChannel from_kraus(std::vector<Matrix> kraus, double tol = kChannelTol);
  /// Validates Choi positivity and the marginal condition.
  static QuantumChannel from_choi(const Matrix& choi, Index d_in, Index d_out,
                                  double tol = kChannelTol);
  static QuantumChannel from_superop(const Matrix& superop, Index d_in, Index d_out,
                                     double tol = kChannelTol);

  static QuantumChannel identity(Index d);
  static QuantumChannel unitary(const Matrix& u);
  /// ρ ↦ λρ + (1-λ) tr(ρ) I/d, with λ in the CPTP range [-1/(d²-1), 1].
  static QuantumChannel depolarizing(double lambda, Index d);
  static QuantumChannel completely_depolarizing(Index d);
  /// ρ ↦ (XρX + YρY + ZρZ)/3.
  static QuantumChannel pauli_depolarizing();
  /// Qubit amplitude damping with decay probability γ.
  static QuantumChannel amplitude_damping(double gamma);
  /// Replacement channel ρ ↦ tr(ρ) σ.
  static QuantumChannel replacement(const DensityMatrix& sigma, Index d_in);
  static QuantumChannel random(Index d_in, Index d_out, Index n_kraus, Rng& rng);

  Index d_in() const { return d_in_; }
  Index d_out() const { return d_out_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  Matrix choi() const;
  Matrix superoperator() const;

  Matrix apply(const Matrix& rho) const;
  DensityMatrix operator()(const DensityMatrix& rho) const;

 private:
  QuantumChannel(std::vector<Matrix> kraus, Index d_in, Index d_out);

  Index d_in_;
  Index d_out_;
  std::vector<Matrix> kraus_;
  std::optional<Matrix> choi_;
  std::optional<Matrix> superop_;
};

DensityMatrix apply(const QuantumChannel& t, const DensityMatrix& rho);

Matrix kraus_to_choi(const std::vector<Matrix>& kraus);
Matrix kraus_to_superop(const std::vector<Matrix>& kraus);
Matrix superop_to_choi(const Matrix& superop, Index d_in, Index d_out);
Matrix choi_to_superop(const Matrix& choi, Index d_in, Index d_out);
/// Kraus operators from the Choi eigendecomposition; eigenvalues below
/// `cutoff` are discarded. Throws if the Choi matrix is not PSD within `tol`.
std::vector<Matrix> choi_to_kraus(const Matrix& choi, Index d_in, Index d_out,
                                  double cutoff = 1e-10, double tol = kChannelTol);

/// Superoperator of X ↦ K X K†.
Matrix conjugation_superop(const Matrix& k);

/// Stinespring isometry V: C^{d_in} → C^{d_out} ⊗ C^{d_env}, d_env = #Kraus.
Isometry stinespring(const QuantumChannel& t);
/// Channel to the environment: ρ ↦ tr_B(VρV†).
QuantumChannel complementary(const QuantumChannel& t);

/// s ∘ t.
QuantumChannel compose(const QuantumChannel& s, const QuantumChannel& t);
QuantumChannel tensor(const QuantumChannel& s, const QuantumChannel& t);
QuantumChannel tensor_power(const QuantumChannel& t, Index m);
/// λ s + (1-λ) t.
QuantumChannel mix(double lambda, const QuantumChannel& s, const QuantumChannel& t);
/// (id_{d_ref} ⊗ t)(ρ) for ρ on C^{d_ref} ⊗ C^{d_in}.
Matrix apply_local(const QuantumChannel& t, const Matrix& rho, Index d_ref);

/// V(ψ) = U(ψ ⊗ φ) with φ = |0⟩ on C^k.
struct UnitaryDilation {
  Matrix unitary;
  PureState ancilla;
};
UnitaryDilation isometry_to_unitary(const Isometry& v);

/// ⟨ω|(id ⊗ T)(ω)|ω⟩.
double entanglement_fidelity(const QuantumChannel& t);

/// Two-sided bounds on ‖S − T‖_⋄ from the normalised and unnormalised Choi
/// difference.
struct DiamondBounds {
  double lower;
  double upper;
};
DiamondBounds diamond_distance_bounds(const QuantumChannel& s, const QuantumChannel& t);

/// Minimum eigenvalue of the partially transposed Choi matrix.
double ppt_min_eigenvalue(const QuantumChannel& t);
bool is_ppt_channel(const QuantumChannel& t, double tol = 1e-9);

}  // namespace qsub
