#pragma once

// Quantum operations in Kraus form, their complementary channel (the
// correlation matrix), selective-measurement ensembles, the Jamiolkowski
// state, composition, Kraus gauge freedom and the Stinespring dilation.

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "holevo/linalg.hpp"
#include "holevo/states.hpp"

namespace holevo {

inline constexpr double kIdentityResolutionTol = 1e-8;
inline constexpr double kDefaultProbFloor = 1e-12;

/// max |sum_i K_i^dagger K_i - 1|.
inline double identity_resolution_residual(const std::vector<Matrix>& ops) {
  if (ops.empty()) return std::numeric_limits<double>::infinity();
  Matrix acc(ops.front().cols(), ops.front().cols());
  for (const auto& k : ops) acc += k.adjoint() * k;
  return max_abs_diff(acc, Matrix::identity(acc.rows()));
}

/// Trace-preserving completely positive map on d x d matrices.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<Matrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw InvalidArgument("channel needs at least one Kraus operator");
    const std::size_t d = kraus_.front().rows();
    for (const auto& k : kraus_) {
      if (k.rows() != d || k.cols() != d) throw DimensionMismatch("Kraus operators must all be d x d");
    }
    const double residual = identity_resolution_residual(kraus_);
    if (!(residual <= kIdentityResolutionTol)) {
      std::ostringstream msg;
      msg << "Kraus operators violate the identity resolution (residual " << residual << ")";
      throw InvalidArgument(msg.str());
    }
  }

  std::size_t dim() const noexcept { return kraus_.front().rows(); }
  std::size_t size() const noexcept { return kraus_.size(); }
  const std::vector<Matrix>& kraus() const noexcept { return kraus_; }
  const Matrix& operator[](std::size_t i) const { return kraus_[i]; }

 private:
  std::vector<Matrix> kraus_;
};

/// Positive operator-valued measure: PSD elements summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<Matrix> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw InvalidArgument("POVM needs at least one element");
    const std::size_t d = elements_.front().rows();
    Matrix acc(d, d);
    for (const auto& e : elements_) {
      if (e.rows() != d || e.cols() != d) throw DimensionMismatch("POVM elements must all be d x d");
      if (hermiticity_defect(e) > kStateTol) throw InvalidArgument("POVM element is not Hermitian");
      if (eigvals_hermitian(e).front() < -kStateTol) throw InvalidArgument("POVM element is not positive");
      acc += e;
    }
    if (max_abs_diff(acc, Matrix::identity(d)) > kIdentityResolutionTol) {
      throw InvalidArgument("POVM elements do not sum to the identity");
    }
  }

  std::size_t dim() const noexcept { return elements_.front().rows(); }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Matrix>& elements() const noexcept { return elements_; }

 private:
  std::vector<Matrix> elements_;
};

inline void require_dim(const KrausChannel& phi, std::size_t d, const char* what) {
  if (phi.dim() != d) {
    std::ostringstream msg;
    msg << what << ": channel acts on dimension " << phi.dim() << ", got " << d;
    throw DimensionMismatch(msg.str());
  }
}

/// sum_i K_i M K_i^dagger for an arbitrary square M.
inline Matrix apply_to_matrix(const KrausChannel& phi, const Matrix& m) {
  require_dim(phi, m.rows(), "apply");
  Matrix out(phi.dim(), phi.dim());
  for (const auto& k : phi.kraus()) out += k * m * k.adjoint();
  return out;
}

inline DensityMatrix apply(const KrausChannel& phi, const DensityMatrix& rho) {
  return DensityMatrix::trusted(apply_to_matrix(phi, rho.matrix()));
}

/// Output of the complementary channel: sigma_ij = tr(rho K_j^dagger K_i).
inline DensityMatrix correlation_matrix(const KrausChannel& phi, const DensityMatrix& rho) {
  require_dim(phi, rho.dim(), "correlation_matrix");
  const std::size_t m = phi.size();
  std::vector<Matrix> k_rho;  // K_i rho
  k_rho.reserve(m);
  for (const auto& k : phi.kraus()) k_rho.push_back(k * rho.matrix());
  Matrix sigma(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      // tr(rho K_j^dagger K_i) = tr(K_i rho K_j^dagger)
      sigma(i, j) = trace_of_product(k_rho[i], phi[j].adjoint());
      sigma(j, i) = std::conj(sigma(i, j));
    }
  }
  return DensityMatrix::trusted(sigma);
}

/// Outcome probabilities q_i = tr(rho K_i^dagger K_i).
inline std::vector<double> outcome_probabilities(const KrausChannel& phi, const DensityMatrix& rho) {
  require_dim(phi, rho.dim(), "outcome_probabilities");
  std::vector<double> q;
  q.reserve(phi.size());
  for (const auto& k : phi.kraus()) q.push_back(std::max(0.0, trace_of_product(k * rho.matrix(), k.adjoint()).real()));
  return q;
}

/// Post-measurement ensemble {q_i, K_i rho K_i^dagger / q_i}. Outcomes with
/// q_i < prob_floor are dropped and the surviving weights renormalized.
inline Ensemble measurement_ensemble(const KrausChannel& phi, const DensityMatrix& rho,
                                     double prob_floor = kDefaultProbFloor) {
  require_dim(phi, rho.dim(), "measurement_ensemble");
  std::vector<double> weights;
  std::vector<DensityMatrix> states;
  for (const auto& k : phi.kraus()) {
    Matrix a = k * rho.matrix() * k.adjoint();
    const double q = std::max(0.0, a.trace().real());
    if (q < prob_floor) continue;
    weights.push_back(q);
    states.push_back(DensityMatrix::trusted(a * (1.0 / q)));
  }
  if (weights.empty()) throw AllOutcomesNegligible("every outcome probability is below the floor");
  double kept = 0.0;
  for (double w : weights) kept += w;
  for (auto& w : weights) w /= kept;
  return Ensemble(ClassicalDistribution(std::move(weights)), std::move(states));
}

/// (Phi (x) id)(|phi+><phi+|) with |phi+> = N^{-1/2} sum_i |i>|i>.
inline DensityMatrix jamiolkowski_state(const KrausChannel& phi) {
  const std::size_t n = phi.dim();
  Matrix out(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Matrix unit(n, n);
      unit(i, j) = 1.0;
      const Matrix image = apply_to_matrix(phi, unit);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) out(a * n + i, b * n + j) += image(a, b) / static_cast<double>(n);
    }
  }
  return DensityMatrix::trusted(out);
}

/// phi2 after phi1, Kraus list {L_i K_k} in lexicographic (i, k) order.
inline KrausChannel compose(const KrausChannel& phi2, const KrausChannel& phi1) {
  require_dim(phi2, phi1.dim(), "compose");
  std::vector<Matrix> ops;
  ops.reserve(phi2.size() * phi1.size());
  for (const auto& l : phi2.kraus())
    for (const auto& k : phi1.kraus()) ops.push_back(l * k);
  return KrausChannel(std::move(ops));
}

/// K'_i = sum_j V_ij K_j for an isometry V (m' x m, V^dagger V = 1).
inline KrausChannel gauge_transform(const KrausChannel& phi, const Matrix& v) {
  if (v.cols() != phi.size()) throw DimensionMismatch("gauge_transform: V must have one column per Kraus operator");
  const double defect = max_abs_diff(v.adjoint() * v, Matrix::identity(v.cols()));
  if (defect > 1e-9) {
    std::ostringstream msg;
    msg << "gauge_transform: V^dagger V deviates from identity by " << defect;
    throw NotIsometry(msg.str());
  }
  std::vector<Matrix> ops;
  ops.reserve(v.rows());
  for (std::size_t i = 0; i < v.rows(); ++i) {
    Matrix k(phi.dim(), phi.dim());
    for (std::size_t j = 0; j < phi.size(); ++j) {
      if (v(i, j) != complex{0.0, 0.0}) k += v(i, j) * phi[j];
    }
    ops.push_back(std::move(k));
  }
  return KrausChannel(std::move(ops));
}

/// W = sum_i |i>_env (x) K_i, a (m d) x d isometry. Row index is i * d + a, so
/// the environment is slot 0 and the system slot 1 of the output.
inline Matrix stinespring_isometry(const KrausChannel& phi) {
  const std::size_t d = phi.dim();
  Matrix w(phi.size() * d, d);
  for (std::size_t i = 0; i < phi.size(); ++i)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) w(i * d + a, b) = phi[i](a, b);
  return w;
}

/// Extensional equality: equal action on every matrix unit |i><j|.
inline bool same_action(const KrausChannel& a, const KrausChannel& b, double tol = 1e-10) {
  if (a.dim() != b.dim()) return false;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Matrix unit(n, n);
      unit(i, j) = 1.0;
      if (max_abs_diff(apply_to_matrix(a, unit), apply_to_matrix(b, unit)) > tol) return false;
    }
  }
  return true;
}

/// max |Phi(1/d) - 1/d|.
inline double bistochastic_defect(const KrausChannel& phi) {
  const auto mixed = maximally_mixed(phi.dim());
  return max_abs_diff(apply(phi, mixed).matrix(), mixed.matrix());
}

// Named channels

inline KrausChannel identity_channel(std::size_t d) { return KrausChannel({Matrix::identity(d)}); }

inline KrausChannel unitary_channel(const Matrix& u) { return KrausChannel({u}); }

/// Projective measurement in the computational basis, {|k><k|}.
inline KrausChannel dephasing_channel(std::size_t d) {
  std::vector<Matrix> ops;
  for (std::size_t k = 0; k < d; ++k) ops.push_back(outer(Matrix::basis(d, k)));
  return KrausChannel(std::move(ops));
}

/// Projective measurement in the eigenbasis given by the columns of `u`.
inline KrausChannel projective_channel(const Matrix& u) {
  std::vector<Matrix> ops;
  for (std::size_t k = 0; k < u.cols(); ++k) {
    Matrix col(u.rows(), 1);
    for (std::size_t r = 0; r < u.rows(); ++r) col(r, 0) = u(r, k);
    ops.push_back(outer(col));
  }
  return KrausChannel(std::move(ops));
}

inline Matrix pauli_x() { return Matrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }
inline Matrix pauli_y() { return Matrix(2, 2, {0.0, complex{0.0, -1.0}, complex{0.0, 1.0}, 0.0}); }
inline Matrix pauli_z() { return Matrix(2, 2, {1.0, 0.0, 0.0, -1.0}); }

/// Qubit depolarizing channel {sqrt(1-3p/4) 1, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z}.
inline KrausChannel depolarizing_qubit(double p) {
  if (!(p >= 0.0 && p <= 4.0 / 3.0)) throw InvalidArgument("depolarizing parameter out of range");
  const double a = std::sqrt(1.0 - 3.0 * p / 4.0);
  const double b = std::sqrt(p / 4.0);
  return KrausChannel({a * Matrix::identity(2), b * pauli_x(), b * pauli_y(), b * pauli_z()});
}

/// rho -> tr(rho) 1/d via the d^2 Kraus operators |a><b| / sqrt(d).
inline KrausChannel completely_depolarizing(std::size_t d) {
  std::vector<Matrix> ops;
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      Matrix k(d, d);
      k(a, b) = s;
      ops.push_back(std::move(k));
    }
  return KrausChannel(std::move(ops));
}

/// Random channel with m Kraus operators: a Haar isometry C^d -> C^m (x) C^d
/// cut into m blocks.
inline KrausChannel random_channel(std::size_t d, std::size_t m, Rng& rng) {
  const Matrix w = random_isometry(d * m, d, rng);
  std::vector<Matrix> ops;
  ops.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Matrix k(d, d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) k(a, b) = w(i * d + a, b);
    ops.push_back(std::move(k));
  }
  return KrausChannel(std::move(ops));
}

/// Random POVM with n elements: E_b = S^{-1/2} A_b S^{-1/2}, A_b random PSD,
/// S = sum_b A_b.
inline Povm random_povm(std::size_t d, std::size_t n, Rng& rng) {
  std::vector<Matrix> raw;
  Matrix total(d, d);
  for (std::size_t b = 0; b < n; ++b) {
    const Matrix g = ginibre(d, d, rng);
    raw.push_back(g * g.adjoint());
    total += raw.back();
  }
  const Matrix inv_sqrt = matrix_function(total, [](double x) { return 1.0 / std::sqrt(x); }, 0.0);
  std::vector<Matrix> elems;
  for (const auto& a : raw) elems.push_back(hermitian_part(inv_sqrt * a * inv_sqrt));
  return Povm(std::move(elems));
}

/// Projective POVM onto the computational basis.
inline Povm computational_povm(std::size_t d) {
  std::vector<Matrix> elems;
  for (std::size_t k = 0; k < d; ++k) elems.push_back(outer(Matrix::basis(d, k)));
  return Povm(std::move(elems));
}

}  // namespace holevo
