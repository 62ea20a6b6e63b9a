#pragma once

// Dense complex matrix kernel: the carrier type for states, Kraus operators
// and unitaries, plus a cyclic Jacobi Hermitian eigensolver and the matrix
// functions built on it.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "holevo/error.hpp"

namespace holevo {

using complex = std::complex<double>;

/// Dense row-major complex matrix.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, complex{0.0, 0.0}) {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<complex> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
      throw DimensionMismatch("matrix entry count does not match its shape");
    }
    for (const auto& z : data_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InvalidArgument("matrix contains a non-finite entry");
      }
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(std::span<const double> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  /// Column vector from its entries.
  static Matrix column(std::span<const complex> values) {
    return Matrix(values.size(), 1, std::vector<complex>(values.begin(), values.end()));
  }

  /// Computational basis column vector |k> in dimension n.
  static Matrix basis(std::size_t n, std::size_t k) {
    Matrix v(n, 1);
    v(k, 0) = 1.0;
    return v;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const complex> entries() const noexcept { return data_; }

  Matrix adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  complex trace() const {
    complex t{0.0, 0.0};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }

  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }

  Matrix& operator*=(complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, complex s) { return a *= s; }
  friend Matrix operator*(complex s, Matrix a) { return a *= s; }
  friend Matrix operator*(Matrix a, double s) { return a *= complex{s, 0.0}; }
  friend Matrix operator*(double s, Matrix a) { return a *= complex{s, 0.0}; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const complex aik = a(i, k);
        if (aik == complex{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complex> data_;
};

using ComplexMatrix = Matrix;

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).max_abs(); }

/// tr(A B) without forming the product.
inline complex trace_of_product(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionMismatch("trace_of_product shape mismatch");
  }
  complex t{0.0, 0.0};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
  return t;
}

/// v v^dagger for a column vector v.
inline Matrix outer(const Matrix& v) { return v * v.adjoint(); }

inline double hermiticity_defect(const Matrix& h) {
  if (!h.is_square()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = i; j < h.cols(); ++j) d = std::max(d, std::abs(h(i, j) - std::conj(h(j, i))));
  return d;
}

inline Matrix hermitian_part(const Matrix& h) { return 0.5 * (h + h.adjoint()); }

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const complex aij = a(i, j);
      if (aij == complex{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

/// Reduced matrix on the subsystems listed in `keep`, in ascending slot order.
/// Slot 0 is the most significant factor of the row-major tensor index.
inline Matrix partial_trace(const Matrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>{});
  if (!m.is_square() || m.rows() != total) {
    throw DimensionMismatch("partial_trace: product of dims does not match matrix dimension");
  }
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) throw DimensionMismatch("partial_trace: slot index out of range");
    kept[k] = true;
  }
  std::size_t kept_dim = 1;
  std::size_t traced_dim = 1;
  for (std::size_t s = 0; s < dims.size(); ++s) (kept[s] ? kept_dim : traced_dim) *= dims[s];

  // For every full index: its kept-subsystem index and its traced-subsystem index.
  std::vector<std::size_t> kept_index(total), traced_index(total);
  std::vector<std::size_t> digits(dims.size(), 0);
  for (std::size_t full = 0; full < total; ++full) {
    std::size_t ki = 0, ti = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      if (kept[s]) {
        ki = ki * dims[s] + digits[s];
      } else {
        ti = ti * dims[s] + digits[s];
      }
    }
    kept_index[full] = ki;
    traced_index[full] = ti;
    for (std::size_t s = dims.size(); s-- > 0;) {
      if (++digits[s] < dims[s]) break;
      digits[s] = 0;
    }
  }
  std::vector<std::vector<std::size_t>> by_traced(traced_dim);
  for (std::size_t full = 0; full < total; ++full) by_traced[traced_index[full]].push_back(full);

  Matrix out(kept_dim, kept_dim);
  for (const auto& group : by_traced)
    for (std::size_t a : group)
      for (std::size_t b : group) out(kept_index[a], kept_index[b]) += m(a, b);
  return out;
}

inline Matrix partial_trace(const Matrix& m, std::initializer_list<std::size_t> dims,
                            std::initializer_list<std::size_t> keep) {
  const std::vector<std::size_t> d(dims), k(keep);
  return partial_trace(m, std::span<const std::size_t>(d), std::span<const std::size_t>(k));
}

struct HermitianEigenResult {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // orthonormal columns
};

inline constexpr double kDefaultHermiticityTol = 1e-9;
inline constexpr int kJacobiSweepBudget = 100;

namespace detail {

inline HermitianEigenResult jacobi_hermitian(const Matrix& h, double hermiticity_tol, bool want_vectors) {
  if (!h.is_square()) throw DimensionMismatch("eig_hermitian: matrix is not square");
  const double defect = hermiticity_defect(h);
  if (!(defect <= hermiticity_tol)) {
    std::ostringstream msg;
    msg << "eig_hermitian: max |H - H^dagger| = " << defect << " exceeds " << hermiticity_tol;
    throw NotHermitian(msg.str());
  }
  const std::size_t n = h.rows();
  Matrix a = hermitian_part(h);
  Matrix v = want_vectors ? Matrix::identity(n) : Matrix{};
  const double scale = a.frobenius_norm();

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
  };

  const double target = std::numeric_limits<double>::epsilon() * static_cast<double>(n) * scale;
  int sweep = 0;
  for (; sweep < kJacobiSweepBudget && off_norm() > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g <= 1e-300 || g <= 1e-18 * scale) continue;
        // J = D R: D puts a phase on column q so the pivot becomes real, R is
        // the real Jacobi rotation that annihilates it.
        const complex phase = apq / g;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * g);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const complex jpp = c;
        const complex jpq = s;
        const complex jqp = -s * std::conj(phase);
        const complex jqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {  // A <- A J
          const complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- J^dagger A
          const complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; want_vectors && k < n; ++k) {  // V <- V J
          const complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }
  if (sweep == kJacobiSweepBudget && off_norm() > 1e-12 * scale) {
    throw NoConvergence("eig_hermitian: Jacobi sweep budget exhausted");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  HermitianEigenResult result{std::vector<double>(n), want_vectors ? Matrix(n, n) : Matrix{}};
  for (std::size_t c = 0; c < n; ++c) {
    result.eigenvalues[c] = a(order[c], order[c]).real();
    if (!want_vectors) continue;
    for (std::size_t r = 0; r < n; ++r) result.eigenvectors(r, c) = v(r, order[c]);
  }
  return result;
}

}  // namespace detail

/// Cyclic Jacobi diagonalization of a Hermitian matrix. The input is
/// symmetrized as (H + H^dagger)/2 first.
inline HermitianEigenResult eig_hermitian(const Matrix& h, double hermiticity_tol = kDefaultHermiticityTol) {
  return detail::jacobi_hermitian(h, hermiticity_tol, true);
}

/// Eigenvalues only, ascending.
inline std::vector<double> eigvals_hermitian(const Matrix& h, double hermiticity_tol = kDefaultHermiticityTol) {
  return detail::jacobi_hermitian(h, hermiticity_tol, false).eigenvalues;
}

/// V diag(values) V^dagger.
inline Matrix reconstruct(const Matrix& vectors, std::span<const double> values) {
  const std::size_t n = vectors.rows();
  Matrix out(n, n);
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const complex vik = vectors(i, k) * values[k];
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(vectors(j, k));
    }
  }
  return out;
}

/// f(H) for a function defined on the whole real line.
template <class F>
Matrix matrix_function(const Matrix& h, F&& f) {
  auto eig = eig_hermitian(h);
  std::vector<double> fv(eig.eigenvalues.size());
  std::transform(eig.eigenvalues.begin(), eig.eigenvalues.end(), fv.begin(), f);
  return reconstruct(eig.eigenvectors, fv);
}

/// f(H) for a function defined on [0, inf). Eigenvalues in [-domain_clip, 0)
/// are clipped to 0; anything below -domain_clip is a DomainError.
template <class F>
Matrix matrix_function(const Matrix& h, F&& f, double domain_clip) {
  auto eig = eig_hermitian(h);
  std::vector<double> fv(eig.eigenvalues.size());
  for (std::size_t k = 0; k < fv.size(); ++k) {
    double x = eig.eigenvalues[k];
    if (x < 0.0) {
      if (x < -domain_clip) {
        std::ostringstream msg;
        msg << "matrix_function: eigenvalue " << x << " below -" << domain_clip;
        throw DomainError(msg.str());
      }
      x = 0.0;
    }
    fv[k] = f(x);
  }
  return reconstruct(eig.eigenvectors, fv);
}

/// Eigenvalues of an n x n PSD matrix below this are eigensolver rounding
/// noise. Taking sqrt of them would turn O(eps) into O(sqrt(eps)).
inline double psd_noise_floor(std::size_t n, double lambda_max) {
  return 16.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * std::max(0.0, lambda_max);
}

/// Principal square root of a positive semi-definite matrix; eigenvalues
/// under psd_noise_floor map to 0.
inline Matrix sqrtm_psd(const Matrix& a, double domain_clip = 1e-9) {
  auto eig = eig_hermitian(a);
  const double noise = eig.eigenvalues.empty() ? 0.0 : psd_noise_floor(a.rows(), eig.eigenvalues.back());
  std::vector<double> fv(eig.eigenvalues.size());
  for (std::size_t k = 0; k < fv.size(); ++k) {
    const double x = eig.eigenvalues[k];
    if (x < -domain_clip) {
      std::ostringstream msg;
      msg << "sqrtm_psd: eigenvalue " << x << " below -" << domain_clip;
      throw DomainError(msg.str());
    }
    fv[k] = x <= noise ? 0.0 : std::sqrt(x);
  }
  return reconstruct(eig.eigenvectors, fv);
}

/// exp(i t H) for Hermitian H.
inline Matrix unitary_exp(const Matrix& h, double t) {
  auto eig = eig_hermitian(h);
  const std::size_t n = h.rows();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const complex ph = std::polar(1.0, t * eig.eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const complex vik = eig.eigenvectors(i, k) * ph;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

struct PolarDecomposition {
  Matrix hermitian;  // X = sqrt(A A^dagger), positive semi-definite
  Matrix unitary;    // U, with A = X U
};

/// Left polar decomposition A = X U. Built from the eigendecomposition
/// A A^dagger = W S^2 W^dagger: each left singular vector w_k is paired with
/// y_k = A^dagger w_k / s_k, giving X = W S W^dagger and U = W Y^dagger.
/// Singular values are taken as |A^dagger w_k| rather than the square root of
/// the eigenvalue, which keeps them accurate to O(eps |A|). Right vectors of
/// (numerically) zero singular values are completed by Gram-Schmidt and
/// paired with the remaining left null vectors.
inline PolarDecomposition polar_decompose(const Matrix& a) {
  if (!a.is_square()) throw DimensionMismatch("polar_decompose: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return {Matrix{}, Matrix{}};
  const auto eig = eig_hermitian(hermitian_part(a * a.adjoint()), std::numeric_limits<double>::infinity());
  const Matrix& left = eig.eigenvectors;
  const Matrix z = a.adjoint() * left;  // column k is A^dagger w_k

  std::vector<double> sing(n);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r) s += std::norm(z(r, k));
    sing[k] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return sing[i] > sing[j]; });
  const double null_tol = 64.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * a.frobenius_norm();

  Matrix right(n, n);
  std::vector<std::size_t> accepted;  // columns of `right` already orthonormal
  auto orthogonalize = [&](std::vector<complex>& y) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j : accepted) {
        complex dot{0.0, 0.0};
        for (std::size_t r = 0; r < n; ++r) dot += std::conj(right(r, j)) * y[r];
        for (std::size_t r = 0; r < n; ++r) y[r] -= dot * right(r, j);
      }
    }
    double norm = 0.0;
    for (const auto& v : y) norm += std::norm(v);
    return std::sqrt(norm);
  };
  auto store = [&](std::size_t k, const std::vector<complex>& y, double norm) {
    for (std::size_t r = 0; r < n; ++r) right(r, k) = y[r] / norm;
    accepted.push_back(k);
  };

  std::vector<std::size_t> null_cols;
  for (std::size_t k : order) {
    if (sing[k] <= null_tol) {
      null_cols.push_back(k);
      continue;
    }
    std::vector<complex> y(n);
    for (std::size_t r = 0; r < n; ++r) y[r] = z(r, k) / sing[k];
    const double norm = orthogonalize(y);
    if (norm < 0.5) {
      null_cols.push_back(k);
      continue;
    }
    store(k, y, norm);
  }
  std::size_t e = 0;
  for (std::size_t k : null_cols) {
    for (; e < n; ++e) {
      std::vector<complex> y(n, complex{0.0, 0.0});
      y[e] = 1.0;
      const double norm = orthogonalize(y);
      if (norm >= 1e-3) {
        store(k, y, norm);
        ++e;
        break;
      }
    }
  }

  return {reconstruct(left, sing), left * right.adjoint()};
}

}  // namespace holevo
