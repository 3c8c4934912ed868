#include "qsub/bounds.hpp"

#include "qsub/entropy.hpp"

#include <cmath>
#include <limits>

namespace qsub {

BoundReport unitary_upper_bound_depolarizing(double r, double t, const DensityMatrix& rho0, Index d) {
  if (r < 0 || t < 0) throw std::invalid_argument("unitary_upper_bound: negative r or t");
  if (rho0.dim() != d) throw DimensionError("unitary_upper_bound: ρ0 dimension mismatch");
  const double s0 = von_neumann(rho0);
  BoundReport out;
  out.name = "unitary_upper_bound_depolarizing";
  out.value = std::log2(static_cast<double>(d)) - (1.0 - std::exp(-r * t)) * s0;
  out.parameters = {{"r", r}, {"t", t}, {"d", double(d)}, {"S(rho0)", s0}};
  return out;
}

BoundReport cd_upper_bound(double r, double t, Index d) {
  if (r < 0 || t < 0) throw std::invalid_argument("cd_upper_bound: negative r or t");
  BoundReport out;
  out.name = "cd_upper_bound";
  out.value = std::exp(-r * t) * std::log2(static_cast<double>(d));
  out.parameters = {{"r", r}, {"t", t}, {"d", double(d)}};
  return out;
}

namespace {

double coherent_info_at(const Liouvillian& l, double tau) {
  const Index d = l.dim();
  const Matrix choi = superop_to_choi(semigroup_superop(l, tau), d, d);
  return coherent_information_state(choi, {d, d});
}

}  // namespace

double delta_k(const Liouvillian& l, double t, Index k) {
  if (k < 1) throw std::invalid_argument("delta_k: k must be ≥ 1");
  if (t < 0) throw std::invalid_argument("delta_k: negative t");
  return std::log2(static_cast<double>(l.dim())) - coherent_info_at(l, t / static_cast<double>(k));
}

BoundReport lower_bound_fixed_point(const Liouvillian& l, double t, const DensityMatrix& rho0,
                                    Index k_max, double c) {
  const Index d = l.dim();
  if (rho0.dim() != d) throw DimensionError("lower_bound_fixed_point: ρ0 dimension mismatch");
  if (k_max < 1) throw std::invalid_argument("lower_bound_fixed_point: k_max must be ≥ 1");
  if (l.apply(rho0.matrix()).norm() > 1e-8)
    throw std::invalid_argument("lower_bound_fixed_point: ρ0 is not a fixed point");
  const double log_d = std::log2(static_cast<double>(d));
  const double s0 = von_neumann(rho0);
  const double gain = log_d - s0;
  if (gain <= 1e-12)
    throw std::invalid_argument("lower_bound_fixed_point: maximally mixed fixed point gives no ancillas");

  BoundReport out;
  out.name = "lower_bound_fixed_point";
  out.value = -std::numeric_limits<double>::infinity();
  Index best_k = 1;
  double best_delta = 0.0;
  for (Index k = 1; k <= k_max; ++k) {
    const double ic = coherent_info_at(l, t / static_cast<double>(k));
    const double dk = log_d - ic;
    const double v = ic * gain / (gain + static_cast<double>(k) * dk * (1.0 + c));
    out.scan.emplace_back(k, v);
    if (v > out.value) {
      out.value = v;
      best_k = k;
      best_delta = dk;
    }
  }
  out.parameters = {{"t", t}, {"c", c}, {"k", double(best_k)}, {"k_max", double(k_max)},
                    {"S(rho0)", s0}, {"delta_k", best_delta}};
  if (s0 <= 1e-12) out.certificate = "pure fixed point";
  return out;
}

PptTime ppt_time(const Liouvillian& l, double t_max, double tol) {
  if (!(t_max > 0)) throw std::invalid_argument("ppt_time: t_max must be positive");
  const Index d = l.dim();
  auto min_eig = [&](double t) {
    const Matrix choi = superop_to_choi(semigroup_superop(l, t), d, d);
    return herm_eigenvalues(partial_transpose(choi, {d, d}, {0})).minCoeff();
  };
  auto ppt = [&](double t) { return min_eig(t) >= -tol; };

  constexpr int kGrid = 400;
  if (!ppt(t_max)) throw std::domain_error("ppt_time: channel never PPT on [0, t_max]");
  // Walk back from t_max to the last grid point that is not PPT.
  double hi = t_max, lo = 0.0;
  bool found = false;
  for (int i = kGrid - 1; i >= 0; --i) {
    const double t = t_max * i / kGrid;
    if (!ppt(t)) {
      lo = t;
      found = true;
      break;
    }
    hi = t;
  }
  if (!found) return {0.0, min_eig(0.0), min_eig(1e-4)};
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (ppt(mid) ? hi : lo) = mid;
  }
  return {hi, min_eig(std::max(0.0, hi - 1e-4)), min_eig(hi + 1e-4)};
}

}  // namespace qsub
