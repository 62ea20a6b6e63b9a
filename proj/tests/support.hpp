#pragma once

// Test-only oracles. Everything here is written independently of the library
// paths it is used to check (closed forms, explicit index loops).

#include <cmath>
#include <complex>
#include <vector>

#include "holevo/linalg.hpp"

namespace holevo::testing {

/// Eigenvalues of a 2x2 Hermitian matrix from the characteristic polynomial.
inline std::pair<double, double> eig2x2(const Matrix& m) {
  const double a = m(0, 0).real(), d = m(1, 1).real();
  const double b2 = std::norm(m(0, 1));
  const double mean = 0.5 * (a + d);
  const double r = std::sqrt(0.25 * (a - d) * (a - d) + b2);
  return {mean - r, mean + r};
}

inline double h2(double x) {
  auto eta = [](double t) { return t > 0.0 ? -t * std::log(t) : 0.0; };
  return eta(x) + eta(1.0 - x);
}

/// Shannon entropy with explicit 0 ln 0 = 0.
inline double shannon(const std::vector<double>& p) {
  double s = 0.0;
  for (double x : p)
    if (x > 0.0) s -= x * std::log(x);
  return s;
}

/// tr_B of a (da db) x (da db) matrix by explicit summation.
inline Matrix trace_out_second(const Matrix& m, std::size_t da, std::size_t db) {
  Matrix out(da, da);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

/// tr_A of a (da db) x (da db) matrix by explicit summation.
inline Matrix trace_out_first(const Matrix& m, std::size_t da, std::size_t db) {
  Matrix out(db, db);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return out;
}

inline Matrix ket_plus() {
  const double s = 1.0 / std::sqrt(2.0);
  return Matrix(2, 1, {s, s});
}

// Frozen oracle values (numpy eigvalsh / closed-form scalar evaluation).
inline constexpr double kChiZeroPlus = 0.4164955307;        // H2((1 - 1/sqrt2)/2)
inline constexpr double kMutualInfoZeroPlusZ = 0.2157615543;  // joint law (1/2, 0; 1/4, 1/4)
inline constexpr double kRelEntHalfVsThreeQuarter = 0.1438410362;
inline constexpr double kBuresZeroPlus = 0.7653668647;      // sqrt(2 - sqrt2)
inline constexpr double kEntropicZeroPlus = 0.6453646494;   // sqrt(H2((1 - 1/sqrt2)/2))
inline constexpr double kSqrtLn2 = 0.8325546112;
inline constexpr double kDtNineTenths = 0.6066829544;      // P = (.9,.1), Q = (.1,.9)
inline constexpr double kDeNineTenths = 0.7073912804;

}  // namespace holevo::testing
