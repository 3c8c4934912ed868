#pragma once

#include "qsub/channel.hpp"
#include "qsub/linalg.hpp"
#include "qsub/states.hpp"

#include <optional>
#include <vector>

namespace qsub {

/// Generator L(ρ) = -i[H,ρ] + Σ_k (A_k ρ A_k† - ½{A_k†A_k, ρ}).
///
/// The column-stacked superoperator
///   -i(I⊗H - Hᵀ⊗I) + Σ_k (Ā_k⊗A_k - ½ I⊗A_k†A_k - ½ (A_k†A_k)ᵀ⊗I)
/// is cached for d ≤ kCacheDim.
class Liouvillian {
 public:
  static constexpr Index kCacheDim = 32;

  static Liouvillian build(Matrix h, std::vector<Matrix> jump_ops, double tol = kStateTol);
  static Liouvillian zero(Index d);

  Index dim() const { return h_.rows(); }
  const Matrix& hamiltonian() const { return h_; }
  const std::vector<Matrix>& jump_operators() const { return ops_; }

  Matrix superoperator() const;
  Matrix apply(const Matrix& rho) const;

  /// c·L for c ≥ 0.
  Liouvillian scaled(double c) const;

 private:
  Liouvillian(Matrix h, std::vector<Matrix> ops);

  Matrix h_;
  std::vector<Matrix> ops_;
  std::optional<Matrix> superop_;
};

Liouvillian operator+(const Liouvillian& a, const Liouvillian& b);

Matrix liouvillian_superop(const Matrix& h, const std::vector<Matrix>& jump_ops);

/// T - id, with the Kraus operators of T as jump operators.
Liouvillian from_channel(const QuantumChannel& t);

/// r(tr(ρ)ρ0 - ρ).
Liouvillian depolarizing_liouvillian(double r, const DensityMatrix& rho0);

/// e^{tL} as a superoperator.
Matrix semigroup_superop(const Liouvillian& l, double t);
QuantumChannel semigroup_channel(const Liouvillian& l, double t);

/// Σ_i id⊗…⊗L⊗…⊗id on m copies (site i), as a Liouvillian on d^m.
Liouvillian local_sum(const Liouvillian& l, Index m);

struct Segment {
  double duration;
  Liouvillian generator;
};

class PiecewiseLiouvillian {
 public:
  explicit PiecewiseLiouvillian(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const { return segments_; }
  Index dim() const { return segments_.front().generator.dim(); }
  double total_time() const;

 private:
  std::vector<Segment> segments_;
};

/// Time-ordered product; later segments act after (on the left of) earlier ones.
QuantumChannel evolve_piecewise(const PiecewiseLiouvillian& p);

/// H = 0 and every jump operator traceless, on the stored representation.
bool is_purely_dissipative(const Liouvillian& l, double tol = 1e-9);

/// Same generator with traceless jump operators and traceless H:
/// A ↦ A - cI (c = tr A/d) and H ↦ H + (i/2)(c̄A' - cA'†).
Liouvillian canonicalize(const Liouvillian& l);

/// Density matrices spanning the stationary states, each with ‖L(ρ)‖_F ≤ 1e-8.
std::vector<DensityMatrix> fixed_points(const Liouvillian& l);

}  // namespace qsub
