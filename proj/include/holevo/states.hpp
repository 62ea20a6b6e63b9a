#pragma once

// Density matrices, classical distributions, ensembles, purification and
// seeded random instance generation.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "holevo/linalg.hpp"

namespace holevo {

inline constexpr double kStateTol = 1e-9;
inline constexpr double kDistributionTol = 1e-12;

/// Hermitian, positive semi-definite, unit-trace matrix.
class DensityMatrix {
 public:
  /// Validates all invariants; throws InvalidArgument naming the violated one.
  explicit DensityMatrix(Matrix m) : m_(std::move(m)) {
    if (!m_.is_square() || m_.rows() == 0) throw InvalidArgument("density matrix must be square and non-empty");
    const double herm = hermiticity_defect(m_);
    if (herm > kStateTol) {
      std::ostringstream msg;
      msg << "density matrix is not Hermitian (defect " << herm << ")";
      throw InvalidArgument(msg.str());
    }
    m_ = hermitian_part(m_);
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > kStateTol) {
      std::ostringstream msg;
      msg << "density matrix trace is " << tr << ", expected 1";
      throw InvalidArgument(msg.str());
    }
    const double min_eig = eigvals_hermitian(m_).front();
    if (min_eig < -kStateTol) {
      std::ostringstream msg;
      msg << "density matrix has negative eigenvalue " << min_eig;
      throw InvalidArgument(msg.str());
    }
  }

  /// Wraps a matrix that is a state by construction (e.g. a channel output).
  /// Only the Hermitian part is kept.
  static DensityMatrix trusted(const Matrix& m) { return DensityMatrix(hermitian_part(m), Trusted{}); }

  static DensityMatrix pure(const Matrix& ket) {
    double norm2 = 0.0;
    for (const auto& z : ket.entries()) norm2 += std::norm(z);
    return trusted(outer(ket) * (1.0 / norm2));
  }

  const Matrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.rows(); }
  complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  struct Trusted {};
  DensityMatrix(Matrix m, Trusted) : m_(std::move(m)) {}

  Matrix m_;
};

/// Probability vector.
class ClassicalDistribution {
 public:
  explicit ClassicalDistribution(std::vector<double> probs) : p_(std::move(probs)) {
    if (p_.empty()) throw InvalidArgument("distribution must be non-empty");
    double sum = 0.0;
    for (double x : p_) {
      if (!std::isfinite(x) || x < 0.0) throw InvalidArgument("distribution has a negative or non-finite entry");
      sum += x;
    }
    if (std::abs(sum - 1.0) > kDistributionTol) {
      std::ostringstream msg;
      msg << "distribution sums to " << sum << ", expected 1";
      throw InvalidArgument(msg.str());
    }
  }

  const std::vector<double>& probs() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }

 private:
  std::vector<double> p_;
};

/// Probabilities q_i paired with states rho_i of a common dimension.
class Ensemble {
 public:
  Ensemble(ClassicalDistribution weights, std::vector<DensityMatrix> states)
      : weights_(std::move(weights)), states_(std::move(states)) {
    if (weights_.size() != states_.size()) throw InvalidArgument("ensemble weights and states differ in length");
    for (const auto& s : states_) {
      if (s.dim() != states_.front().dim()) throw DimensionMismatch("ensemble states differ in dimension");
    }
  }

  const ClassicalDistribution& weights() const noexcept { return weights_; }
  const std::vector<DensityMatrix>& states() const noexcept { return states_; }
  std::size_t size() const noexcept { return states_.size(); }
  std::size_t dim() const noexcept { return states_.front().dim(); }

 private:
  ClassicalDistribution weights_;
  std::vector<DensityMatrix> states_;
};

/// Counter-based generator: output k is the SplitMix64 finalizer applied to
/// seed + k * golden-gamma, so a seed fully determines the stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() noexcept { return mix(seed_ + (++counter_) * kGamma); }

  /// Uniform on [0, 1).
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

  double exponential() noexcept { return -std::log(1.0 - uniform()); }

  std::size_t index(std::size_t n) noexcept { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

  /// Independent generator for sub-stream `k`, derived from the seed only.
  Rng split(std::uint64_t k) const noexcept { return Rng(derive_seed(seed_, k)); }

  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) noexcept {
    return mix(mix(seed ^ 0x6a09e667f3bcc909ULL) + k * kGamma);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline complex complex_normal(Rng& rng) {
  const double re = rng.normal();
  const double im = rng.normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

inline Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix g(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) g(r, c) = complex_normal(rng);
  return g;
}

inline DensityMatrix barycentre(const Ensemble& e) {
  Matrix acc(e.dim(), e.dim());
  for (std::size_t i = 0; i < e.size(); ++i) acc += e.weights()[i] * e.states()[i].matrix();
  return DensityMatrix::trusted(acc);
}

inline DensityMatrix maximally_mixed(std::size_t d) {
  if (d == 0) throw InvalidArgument("dimension must be at least 1");
  return DensityMatrix::trusted(Matrix::identity(d) * (1.0 / static_cast<double>(d)));
}

/// Unit vector on C^d (x) C^d, sum_k sqrt(l_k) |v_k> (x) |k>, whose reduction
/// onto the first factor is rho.
inline Matrix purify(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  const auto eig = eig_hermitian(rho.matrix());
  Matrix psi(d * d, 1);
  for (std::size_t k = 0; k < d; ++k) {
    const double w = std::sqrt(std::max(0.0, eig.eigenvalues[k]));
    if (w == 0.0) continue;
    for (std::size_t a = 0; a < d; ++a) psi(a * d + k, 0) = w * eig.eigenvectors(a, k);
  }
  double norm2 = 0.0;
  for (const auto& z : psi.entries()) norm2 += std::norm(z);
  return psi * (1.0 / std::sqrt(norm2));
}

/// Hilbert-Schmidt random state G G^dagger / tr(G G^dagger).
inline DensityMatrix random_density(std::size_t d, Rng& rng) {
  if (d == 0) throw InvalidArgument("dimension must be at least 1");
  const Matrix g = ginibre(d, d, rng);
  Matrix gg = g * g.adjoint();
  const double tr = gg.trace().real();
  return DensityMatrix::trusted(gg * (1.0 / tr));
}

/// Random pure state from a Gaussian vector.
inline DensityMatrix random_pure_density(std::size_t d, Rng& rng) {
  return DensityMatrix::pure(ginibre(d, 1, rng));
}

/// Haar unitary: modified Gram-Schmidt on the columns of a Ginibre matrix.
/// Gram-Schmidt yields the QR factor with positive real diagonal, which is
/// the phase fixing that makes Q Haar distributed.
inline Matrix random_unitary(std::size_t d, Rng& rng) {
  if (d == 0) throw InvalidArgument("dimension must be at least 1");
  Matrix q = ginibre(d, d, rng);
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t j = 0; j < c; ++j) {
      complex dot{0.0, 0.0};
      for (std::size_t r = 0; r < d; ++r) dot += std::conj(q(r, j)) * q(r, c);
      for (std::size_t r = 0; r < d; ++r) q(r, c) -= dot * q(r, j);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < d; ++r) norm += std::norm(q(r, c));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < d; ++r) q(r, c) /= norm;
  }
  return q;
}

/// First `cols` columns of a Haar unitary on C^rows.
inline Matrix random_isometry(std::size_t rows, std::size_t cols, Rng& rng) {
  const Matrix u = random_unitary(rows, rng);
  Matrix w(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) w(r, c) = u(r, c);
  return w;
}

/// GUE-distributed Hermitian matrix (G + G^dagger)/2.
inline Matrix random_hermitian(std::size_t d, Rng& rng) { return hermitian_part(ginibre(d, d, rng)); }

inline ClassicalDistribution random_distribution(std::size_t n, Rng& rng) {
  if (n == 0) throw InvalidArgument("distribution size must be at least 1");
  std::vector<double> p(n);
  double sum = 0.0;
  for (auto& x : p) sum += (x = rng.exponential());
  for (auto& x : p) x /= sum;
  return ClassicalDistribution(std::move(p));
}

inline Ensemble random_ensemble(std::size_t m, std::size_t d, Rng& rng) {
  auto weights = random_distribution(m, rng);
  std::vector<DensityMatrix> states;
  states.reserve(m);
  for (std::size_t i = 0; i < m; ++i) states.push_back(random_density(d, rng));
  return Ensemble(std::move(weights), std::move(states));
}

inline bool is_diagonal(const Matrix& m, double tol = 1e-12) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (r != c && std::abs(m(r, c)) > tol) return false;
  return true;
}

inline ClassicalDistribution diagonal_distribution(const DensityMatrix& rho) {
  std::vector<double> p(rho.dim());
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += (p[i] = std::max(0.0, rho(i, i).real()));
  for (auto& x : p) x /= sum;
  return ClassicalDistribution(std::move(p));
}

}  // namespace holevo
