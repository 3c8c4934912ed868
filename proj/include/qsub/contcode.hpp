#pragma once

#include "qsub/channel.hpp"
#include "qsub/lindblad.hpp"

#include <string>
#include <vector>

namespace qsub {

/// Pauli string such as "XZZXI"; the first character acts on the most
/// significant tensor factor.
Matrix pauli_string(const std::string& s);

/// Stabilizer code with one recovery Kraus operator U_s P_s per syndrome.
struct StabilizerCode {
  Index n_logical;
  Index m_physical;
  std::vector<std::string> generators;
  Isometry encoder;
  /// Correction Pauli string per syndrome, indexed by the syndrome bits
  /// (generator 0 most significant).
  std::vector<std::string> corrections;
  std::vector<Matrix> recovery_kraus;

  Index physical_dim() const { return encoder.d_to(); }
  Index logical_dim() const { return encoder.d_from(); }
  QuantumChannel recovery() const;
};

/// Syndrome of a Pauli error: bit j set when it anticommutes with generator j.
unsigned syndrome_of(const std::string& error, const std::vector<std::string>& generators);

/// [[5,1,3]] code with generators XZZXI and its cyclic shifts;
/// |0_L⟩ ∝ P|00000⟩ and |1_L⟩ = XXXXX|0_L⟩.
StabilizerCode five_qubit_code();

struct CodeConditions {
  /// ‖R∘V − V‖ and ‖R∘N∘V − mV‖ as superoperator Frobenius distances.
  double recovery_residual;
  double noise_residual;
};

/// N = T^{⊕m}, the local sum Σ_i id⊗…⊗T⊗…⊗id, with multiplicity m.
CodeConditions verify_code_conditions(const StabilizerCode& code, const QuantumChannel& t);

/// Same check for an arbitrary completely positive N on the physical space,
/// given by Kraus operators, compared against multiplicity·V.
CodeConditions verify_code_conditions(const StabilizerCode& code, const std::vector<Matrix>& noise_kraus,
                                      double multiplicity);

/// r(R − id).
Liouvillian coding_liouvillian(const StabilizerCode& code, double r);

/// V†[R(e^{t(L^{⊕m} + r(R − id))}(VρV†))]V.
QuantumChannel logical_channel(const StabilizerCode& code, const Liouvillian& noise, double t, double r);

/// e^{-t(r/2+1)} [a cosh(at/2) + (2+r) sinh(at/2)] / a with a = √(r(4+r)).
double f_closed_form(double t, double r);

struct SeriesValue {
  double value;
  /// Bound on the omitted terms k > k_terms.
  double remainder_bound;
};
/// e^{-t(r+1)} Σ_{k≤K} t^k/k! Σ_l r^l C(l+1, k−l).
SeriesValue f_series(double t, double r, int k_terms);

struct AlphaCheck {
  double fidelity;
  double f_bound;
  bool pass;
};
/// Five-qubit code under Pauli depolarizing noise on each qubit: F_e(logical) ≥ f(5t, r/5).
AlphaCheck alpha_lower_bound_check(const StabilizerCode& code, double t, double r);

/// Column-stochastic or intensity matrix.
struct ClassicalChain {
  enum class Kind { stochastic, intensity };
  ClassicalChain(RealMatrix m, Kind kind);

  RealMatrix matrix;
  Kind kind;
};

struct RepetitionCode {
  Eigen::MatrixXi encoder;   // 8×2
  Eigen::MatrixXi recovery;  // 8×8, majority vote
  Eigen::MatrixXi flips;     // T^{⊕3}
  ClassicalChain noise;      // T^{⊕3} − 3𝟙
};
RepetitionCode classical_repetition();

struct ClassicalCheck {
  double tv_distance;
  double f_bound;
  bool pass;
};
/// R e^{t(L + r(R − 𝟙))} V against V: tv ≤ 1 − f(3t, r/3).
ClassicalCheck classical_alpha_check(double t, double r);

}  // namespace qsub
