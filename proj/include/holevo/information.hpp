#pragma once

// Entropic quantities, all in nats.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "holevo/channels.hpp"
#include "holevo/states.hpp"

namespace holevo {

/// Natural-log information measure. Entropies are clipped at 0; signed
/// quantities such as coherent information are not.
using Nats = double;

inline constexpr double kSupportThreshold = 1e-10;

inline constexpr double to_bits(Nats x) noexcept { return x / std::numbers::ln2; }

/// -x ln x with the 0 ln 0 = 0 convention; negative inputs count as 0.
inline double eta(double x) noexcept { return x > 0.0 ? -x * std::log(x) : 0.0; }

inline Nats entropy_of_spectrum(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double x : eigenvalues) s += eta(x);
  return std::max(0.0, s);
}

inline Nats von_neumann_entropy(const DensityMatrix& rho) {
  const auto ev = eigvals_hermitian(rho.matrix());
  return entropy_of_spectrum(ev);
}

inline Nats shannon_entropy(std::span<const double> p) { return entropy_of_spectrum(p); }

inline Nats shannon_entropy(const ClassicalDistribution& p) { return shannon_entropy(p.probs()); }

inline Nats binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("binary_entropy: argument outside [0, 1]");
  return eta(x) + eta(1.0 - x);
}

/// tr rho1 (ln rho1 - ln rho2), +infinity when supp rho1 is not inside supp rho2.
inline Nats relative_entropy(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) throw DimensionMismatch("relative_entropy: dimension mismatch");
  const auto e1 = eig_hermitian(rho1.matrix());
  const auto e2 = eig_hermitian(rho2.matrix());
  const std::size_t d = rho1.dim();
  // sum_{jk} l1_j |<a_j|b_k>|^2 (ln l1_j - ln l2_k)
  const Matrix overlap = e1.eigenvectors.adjoint() * e2.eigenvectors;
  double value = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double l1 = e1.eigenvalues[j];
    if (l1 <= kSupportThreshold) continue;
    for (std::size_t k = 0; k < d; ++k) {
      const double w = std::norm(overlap(j, k));
      const double l2 = e2.eigenvalues[k];
      if (l2 <= kSupportThreshold) {
        if (w * l1 > kSupportThreshold) return std::numeric_limits<double>::infinity();
        continue;
      }
      value += l1 * w * (std::log(l1) - std::log(l2));
    }
  }
  return std::max(0.0, value);
}

/// S(sum_i q_i rho_i) - sum_i q_i S(rho_i).
inline Nats holevo_chi(const Ensemble& e) {
  double avg = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) avg += e.weights()[i] * von_neumann_entropy(e.states()[i]);
  return von_neumann_entropy(barycentre(e)) - avg;
}

/// sum_i q_i S(rho_i).
inline Nats average_entropy(const Ensemble& e) {
  double avg = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) avg += e.weights()[i] * von_neumann_entropy(e.states()[i]);
  return avg;
}

inline Nats exchange_entropy(const KrausChannel& phi, const DensityMatrix& rho) {
  return von_neumann_entropy(correlation_matrix(phi, rho));
}

/// S(Phi(rho)) - S(sigma). May be negative.
inline Nats coherent_information(const KrausChannel& phi, const DensityMatrix& rho) {
  return von_neumann_entropy(apply(phi, rho)) - exchange_entropy(phi, rho);
}

/// Entropy of the Jamiolkowski state of the channel.
inline Nats map_entropy(const KrausChannel& phi) { return von_neumann_entropy(jamiolkowski_state(phi)); }

/// Generalized Jensen-Shannon divergence of classical measures mu_i with
/// weights q_i: H(sum q_i mu_i) - sum q_i H(mu_i).
inline Nats jensen_shannon(const ClassicalDistribution& weights, std::span<const ClassicalDistribution> measures) {
  if (weights.size() != measures.size()) throw InvalidArgument("jensen_shannon: weights and measures differ in length");
  const std::size_t n = measures.front().size();
  std::vector<double> mix(n, 0.0);
  double avg = 0.0;
  for (std::size_t i = 0; i < measures.size(); ++i) {
    if (measures[i].size() != n) throw DimensionMismatch("jensen_shannon: measures differ in length");
    for (std::size_t k = 0; k < n; ++k) mix[k] += weights[i] * measures[i][k];
    avg += weights[i] * shannon_entropy(measures[i]);
  }
  return shannon_entropy(mix) - avg;
}

/// Two-measure JSD with weights (lambda, 1 - lambda).
inline Nats jensen_shannon(const ClassicalDistribution& p, const ClassicalDistribution& q, double lambda = 0.5) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidLambda("lambda must lie in [0, 1]");
  const ClassicalDistribution w({lambda, 1.0 - lambda});
  const std::vector<ClassicalDistribution> mu{p, q};
  return jensen_shannon(w, mu);
}

/// Holevo quantity of the ensemble {lambda: rho1, 1 - lambda: rho2}.
inline Nats qjsd(const DensityMatrix& rho1, const DensityMatrix& rho2, double lambda = 0.5) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidLambda("lambda must lie in [0, 1]");
  if (rho1.dim() != rho2.dim()) throw DimensionMismatch("qjsd: dimension mismatch");
  return holevo_chi(Ensemble(ClassicalDistribution({lambda, 1.0 - lambda}), {rho1, rho2}));
}

/// Mutual information H(X:Y) of the joint law p(i, b) = q_i tr(rho_i E_b).
inline Nats mutual_information_of_measurement(const Ensemble& e, const Povm& povm) {
  if (povm.dim() != e.dim()) throw DimensionMismatch("POVM dimension does not match the ensemble");
  const std::size_t nx = e.size();
  const std::size_t ny = povm.size();
  std::vector<double> joint(nx * ny), px(nx, 0.0), py(ny, 0.0);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t b = 0; b < ny; ++b) {
      const double p =
          std::max(0.0, e.weights()[i] * trace_of_product(e.states()[i].matrix(), povm.elements()[b]).real());
      joint[i * ny + b] = p;
      px[i] += p;
      py[b] += p;
    }
  return shannon_entropy(px) + shannon_entropy(py) - shannon_entropy(joint);
}

}  // namespace holevo
