#pragma once

#include "qsub/lindblad.hpp"
#include "qsub/states.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qsub {

/// A capacity bound in bits with the parameters it was evaluated at.
struct BoundReport {
  std::string name;
  double value = 0.0;
  std::map<std::string, double> parameters;
  std::optional<std::string> certificate;
  /// (k, value) pairs when the bound is a maximum over subdivisions.
  std::vector<std::pair<Index, double>> scan;
};

/// log d - (1 - e^{-rt}) S(ρ0) for the depolarizing Liouvillian onto ρ0.
BoundReport unitary_upper_bound_depolarizing(double r, double t, const DensityMatrix& rho0, Index d);

/// e^{-rt} log d, the ρ0 = 𝟙/d case.
BoundReport cd_upper_bound(double r, double t, Index d);

/// log d - I^coh(ω, id ⊗ e^{(t/k)L}).
double delta_k(const Liouvillian& l, double t, Index k);

/// max over k ≤ k_max of I^coh(ω, T_{t/k}) (log d - S(ρ0)) / (log d - S(ρ0) + k δ_k (1 + c)).
BoundReport lower_bound_fixed_point(const Liouvillian& l, double t, const DensityMatrix& rho0,
                                    Index k_max = 256, double c = 1.0);

/// Smallest t at which e^{tL} becomes PPT (and stays PPT on the scan grid).
struct PptTime {
  double t;
  /// Minimum eigenvalue of the partially transposed Choi matrix at t ∓ 1e-4.
  double eig_before;
  double eig_after;
};
PptTime ppt_time(const Liouvillian& l, double t_max, double tol = 1e-9);

}  // namespace qsub
