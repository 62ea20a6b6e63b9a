#pragma once

// Fidelity-based distances and the entropic / transmission distances.

#include <algorithm>
#include <cmath>

#include "holevo/information.hpp"
#include "holevo/states.hpp"

namespace holevo {

/// tr sqrt(rho1^{1/2} rho2 rho1^{1/2}).
inline double root_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) throw DimensionMismatch("root_fidelity: dimension mismatch");
  const Matrix s = sqrtm_psd(rho1.matrix());
  const auto ev = eigvals_hermitian(hermitian_part(s * rho2.matrix() * s));
  const double noise = psd_noise_floor(ev.size(), ev.back());
  double f = 0.0;
  for (double x : ev)
    if (x > noise) f += std::sqrt(x);
  return f;
}

inline double bhattacharyya(const ClassicalDistribution& p, const ClassicalDistribution& q) {
  if (p.size() != q.size()) throw DimensionMismatch("bhattacharyya: length mismatch");
  double b = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) b += std::sqrt(p[i] * q[i]);
  return b;
}

inline double hellinger_distance(const ClassicalDistribution& p, const ClassicalDistribution& q) {
  if (p.size() != q.size()) throw DimensionMismatch("hellinger_distance: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

inline double bures_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  const double f = std::clamp(root_fidelity(rho1, rho2), 0.0, 1.0);
  return std::sqrt(2.0 - 2.0 * f);
}

/// sqrt(H2((1 - sqrt F) / 2)).
inline double entropic_distance_from_fidelity(double root_f) {
  const double f = std::clamp(root_f, 0.0, 1.0);
  return std::sqrt(binary_entropy(0.5 * (1.0 - f)));
}

/// The same quantity as a function of the Bures distance, sqrt(H2(D_B^2 / 4)).
inline double entropic_distance_from_bures(double bures) {
  return std::sqrt(binary_entropy(std::clamp(bures * bures / 4.0, 0.0, 0.5)));
}

inline double entropic_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  return entropic_distance_from_fidelity(root_fidelity(rho1, rho2));
}

inline double entropic_distance_classical(const ClassicalDistribution& p, const ClassicalDistribution& q) {
  const double h = hellinger_distance(p, q);
  return std::sqrt(binary_entropy(std::clamp(h * h / 4.0, 0.0, 0.5)));
}

/// sqrt(JSD(P, Q)) with equal weights.
inline double transmission_distance(const ClassicalDistribution& p, const ClassicalDistribution& q) {
  return std::sqrt(std::max(0.0, jensen_shannon(p, q, 0.5)));
}

inline double transmission_distance_quantum(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  return std::sqrt(std::max(0.0, qjsd(rho1, rho2, 0.5)));
}

}  // namespace holevo
