#pragma once

// Numerical certification of the entropy inequalities relating the Holevo
// quantity, the exchange entropy and coherent information, plus the
// unitary-gauge minimization of the correlation-matrix entropy.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "holevo/channels.hpp"
#include "holevo/distances.hpp"
#include "holevo/information.hpp"
#include "holevo/linalg.hpp"
#include "holevo/states.hpp"

namespace holevo {

inline constexpr double kBoundTol = 1e-8;
inline constexpr double kBistochasticTol = 1e-9;
inline constexpr double kPurityTol = 1e-10;

struct LedgerEntry {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  double tol = 0.0;
  bool pass = false;   // slack >= -tol
  std::string instance;
};

/// Record of the inequalities certified on one instance.
class BoundLedger {
 public:
  explicit BoundLedger(std::string instance = {}) : instance_(std::move(instance)) {}

  /// lhs <= rhs up to tol.
  void add_le(std::string name, double lhs, double rhs, double tol) {
    const double slack = rhs - lhs;
    entries_.push_back({std::move(name), lhs, rhs, slack, tol, slack >= -tol, instance_});
  }

  /// a == b up to tol, stored as |a - b| <= 0.
  void add_eq(std::string name, double a, double b, double tol) { add_le(std::move(name), std::abs(a - b), 0.0, tol); }

  void append(const BoundLedger& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  }

  const std::string& instance() const noexcept { return instance_; }
  const std::vector<LedgerEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [](const auto& e) { return !e.pass; }));
  }
  bool all_pass() const { return failures() == 0; }

  double min_slack() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& e : entries_) m = std::min(m, e.slack);
    return m;
  }

  const LedgerEntry* find(std::string_view name) const {
    for (const auto& e : entries_)
      if (e.name == name) return &e;
    return nullptr;
  }

 private:
  std::string instance_;
  std::vector<LedgerEntry> entries_;
};

/// Three-party state with subsystem dimensions (d1, d2, d3).
struct TripartiteState {
  DensityMatrix state;
  std::array<std::size_t, 3> dims;

  TripartiteState(DensityMatrix s, std::array<std::size_t, 3> d) : state(std::move(s)), dims(d) {
    if (dims[0] * dims[1] * dims[2] != state.dim()) throw DimensionMismatch("tripartite dims do not match the state");
  }

  /// Reduced state on the given (ascending) parties, 0-based.
  DensityMatrix marginal(std::initializer_list<std::size_t> keep) const {
    const std::vector<std::size_t> k(keep);
    return DensityMatrix::trusted(partial_trace(state.matrix(), dims, k));
  }

  Nats entropy(std::initializer_list<std::size_t> keep) const { return von_neumann_entropy(marginal(keep)); }
};

inline bool is_pure(const DensityMatrix& rho) { return eigvals_hermitian(rho.matrix()).back() >= 1.0 - kPurityTol; }

/// Both forms of strong subadditivity:
///   S(1) + S(3) <= S(12) + S(23)   and   S(123) + S(2) <= S(12) + S(23).
inline BoundLedger check_ssa(const TripartiteState& omega, double tol = kBoundTol, std::string instance = {}) {
  BoundLedger ledger(std::move(instance));
  const Nats s1 = omega.entropy({0});
  const Nats s2 = omega.entropy({1});
  const Nats s3 = omega.entropy({2});
  const Nats s12 = omega.entropy({0, 1});
  const Nats s23 = omega.entropy({1, 2});
  const Nats s123 = von_neumann_entropy(omega.state);
  ledger.add_le("ssa_s1+s3_le_s12+s23", s1 + s3, s12 + s23, tol);
  ledger.add_le("ssa_s123+s2_le_s12+s23", s123 + s2, s12 + s23, tol);
  return ledger;
}

/// Purifies omega_123 to omega_1234 and checks the bookkeeping that links
/// the two SSA forms: the standard form on parties (2,3,4), the two-marginal
/// form on (2,3,4) and the four purity identities it relies on.
inline BoundLedger check_ssa_purified(const TripartiteState& omega, double tol = kBoundTol, std::string instance = {}) {
  BoundLedger ledger(std::move(instance));
  const std::size_t d = omega.state.dim();
  const std::vector<std::size_t> dims{omega.dims[0], omega.dims[1], omega.dims[2], d};
  const Matrix pure = outer(purify(omega.state));
  auto s = [&](std::initializer_list<std::size_t> keep) {
    const std::vector<std::size_t> k(keep);
    return von_neumann_entropy(DensityMatrix::trusted(partial_trace(pure, dims, k)));
  };
  const Nats s1 = omega.entropy({0}), s12 = omega.entropy({0, 1}), s13 = omega.entropy({0, 2});
  const Nats s123 = von_neumann_entropy(omega.state);
  const Nats s2 = s({1}), s3 = s({2}), s4 = s({3});
  const Nats s23 = s({1, 2}), s24 = s({1, 3}), s34 = s({2, 3}), s234 = s({1, 2, 3});
  ledger.add_le("purified_ssa_s234+s3_le_s23+s34", s234 + s3, s23 + s34, tol);
  ledger.add_le("purified_ssa_s2+s4_le_s23+s24", s2 + s4, s23 + s24, tol);
  ledger.add_eq("purified_s234_eq_s1", s234, s1, tol);
  ledger.add_eq("purified_s34_eq_s12", s34, s12, tol);
  ledger.add_eq("purified_s4_eq_s123", s4, s123, tol);
  ledger.add_eq("purified_s24_eq_s13", s24, s13, tol);
  return ledger;
}

/// The isometry F|phi> = sum_i |i> (x) |i> (x) K_i|phi>, as an (m m d) x d matrix.
inline Matrix omega_isometry(const KrausChannel& phi) {
  const std::size_t d = phi.dim(), m = phi.size();
  Matrix f(m * m * d, d);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) f((i * m + i) * d + a, b) = phi[i](a, b);
  return f;
}

/// omega_123 = F rho F^dagger on C^m (x) C^m (x) C^d.
inline TripartiteState build_omega123(const KrausChannel& phi, const DensityMatrix& rho) {
  require_dim(phi, rho.dim(), "build_omega123");
  const Matrix f = omega_isometry(phi);
  return TripartiteState(DensityMatrix::trusted(f * rho.matrix() * f.adjoint()), {phi.size(), phi.size(), phi.dim()});
}

/// The marginal identities behind the Holevo / exchange-entropy bound:
///   S(omega_12) = S(sigma), S(omega_3) = S(rho'),
///   S(omega_1) - S(omega_23) = -sum_i q_i S(rho'_i),
///   eigenvalues of omega_123 = eigenvalues of rho, padded with zeros.
inline BoundLedger verify_omega123(const KrausChannel& phi, const DensityMatrix& rho, double tol = kBoundTol,
                                   std::string instance = {}) {
  BoundLedger ledger(std::move(instance));
  const TripartiteState omega = build_omega123(phi, rho);
  const Ensemble ens = measurement_ensemble(phi, rho);
  ledger.add_eq("omega12_eq_exchange", omega.entropy({0, 1}), exchange_entropy(phi, rho), tol);
  ledger.add_eq("omega3_eq_output", omega.entropy({2}), von_neumann_entropy(apply(phi, rho)), tol);
  ledger.add_eq("omega1-omega23_eq_-avg", omega.entropy({0}) - omega.entropy({1, 2}), -average_entropy(ens), tol);

  auto big = eigvals_hermitian(omega.state.matrix());
  auto small = eigvals_hermitian(rho.matrix());
  std::reverse(big.begin(), big.end());
  std::reverse(small.begin(), small.end());
  double spectrum_gap = 0.0;
  for (std::size_t k = 0; k < big.size(); ++k) {
    const double expected = k < small.size() ? small[k] : 0.0;
    spectrum_gap = std::max(spectrum_gap, std::abs(big[k] - expected));
  }
  ledger.add_eq("spectrum_omega123_eq_rho", spectrum_gap, 0.0, tol);
  return ledger;
}

/// Kraus operators are orthogonal projectors: K_i = K_i^dagger, K_i K_j = delta_ij K_i.
inline bool is_projective(const KrausChannel& phi, double tol = 1e-10) {
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (hermiticity_defect(phi[i]) > tol) return false;
    for (std::size_t j = 0; j < phi.size(); ++j) {
      const Matrix prod = phi[i] * phi[j];
      const Matrix expected = i == j ? phi[i] : Matrix(phi.dim(), phi.dim());
      if (max_abs_diff(prod, expected) > tol) return false;
    }
  }
  return true;
}

/// chi({q_i, rho'_i}) <= S(sigma) <= H(q) and sum_i q_i S(rho'_i) <= S(rho),
/// with the concavity companion, the bistochastic entry when it applies and
/// the saturation identities for projective Kraus sets.
inline BoundLedger certify_prop2(const KrausChannel& phi, const DensityMatrix& rho, double tol = kBoundTol,
                                 std::string instance = {}) {
  BoundLedger ledger(std::move(instance));
  const Ensemble ens = measurement_ensemble(phi, rho);
  const Nats chi = holevo_chi(ens);
  const Nats s_sigma = exchange_entropy(phi, rho);
  const Nats h_q = shannon_entropy(outcome_probabilities(phi, rho));
  const Nats avg = average_entropy(ens);
  const Nats s_rho = von_neumann_entropy(rho);
  const Nats s_out = von_neumann_entropy(apply(phi, rho));
  ledger.add_le("chi_le_exchange", chi, s_sigma, tol);
  ledger.add_le("exchange_le_H(q)", s_sigma, h_q, tol);
  ledger.add_le("avg_le_S(rho)", avg, s_rho, tol);
  ledger.add_le("avg_le_S(rho')", avg, s_out, tol);
  if (bistochastic_defect(phi) <= kBistochasticTol) ledger.add_le("S(rho)_le_S(rho')", s_rho, s_out, tol);
  if (is_projective(phi)) {
    ledger.add_eq("projective_chi_eq_exchange", chi, s_sigma, tol);
    ledger.add_eq("projective_S(rho')_eq_exchange", s_out, s_sigma, tol);
    ledger.add_le("projective_avg_le_0", avg, 0.0, std::min(tol, 1e-9));
  }
  return ledger;
}

/// |S(rho') - S(sigma)| <= S(rho) <= S(rho') + S(sigma); for pure rho also S(rho') = S(sigma).
inline BoundLedger certify_lindblad(const KrausChannel& phi, const DensityMatrix& rho, double tol = kBoundTol,
                                    std::string instance = {}) {
  BoundLedger ledger(std::move(instance));
  const Nats s_rho = von_neumann_entropy(rho);
  const Nats s_out = von_neumann_entropy(apply(phi, rho));
  const Nats s_sigma = exchange_entropy(phi, rho);
  ledger.add_le("lindblad_lower", std::abs(s_out - s_sigma), s_rho, tol);
  ledger.add_le("lindblad_upper", s_rho, s_out + s_sigma, tol);
  if (is_pure(rho)) ledger.add_eq("pure_output_eq_exchange", s_out, s_sigma, tol);
  return ledger;
}

/// I_coh(Phi1) <= sum_i q_i S(rho'_i) <= S(rho) and
/// I_coh(Phi2 o Phi1) <= sum_i q_i S(Phi2(rho'_i)), with {q_i, rho'_i} the
/// selective-measurement ensemble of Phi1 on rho.
inline BoundLedger certify_coherent(const KrausChannel& phi1, const KrausChannel& phi2, const DensityMatrix& rho,
                                    double tol = kBoundTol, std::string instance = {}) {
  require_dim(phi2, phi1.dim(), "certify_coherent");
  BoundLedger ledger(std::move(instance));
  const Ensemble ens = measurement_ensemble(phi1, rho);
  const Nats avg = average_entropy(ens);
  double avg2 = 0.0;
  for (std::size_t i = 0; i < ens.size(); ++i) avg2 += ens.weights()[i] * von_neumann_entropy(apply(phi2, ens.states()[i]));
  ledger.add_le("icoh1_le_avg", coherent_information(phi1, rho), avg, tol);
  ledger.add_le("avg_le_S", avg, von_neumann_entropy(rho), tol);
  ledger.add_le("icoh12_le_avg2", coherent_information(compose(phi2, phi1), rho), avg2, tol);
  return ledger;
}

/// The minimal-entropy two-outcome correlation matrix
///   [[l, sqrt(l(1-l)) sqrt F], [sqrt(l(1-l)) sqrt F, 1-l]].
inline DensityMatrix optimal_sigma_two(const DensityMatrix& rho1, const DensityMatrix& rho2, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidLambda("lambda must lie in [0, 1]");
  const double off = std::sqrt(lambda * (1.0 - lambda)) * std::clamp(root_fidelity(rho1, rho2), 0.0, 1.0);
  return DensityMatrix::trusted(Matrix(2, 2, {lambda, off, off, 1.0 - lambda}));
}

/// Smaller eigenvalue of optimal_sigma_two: (1 - sqrt(1 - 4 l (1-l) (1-F))) / 2.
inline double optimal_sigma_two_mu(double root_f, double lambda) {
  const double f = std::clamp(root_f, 0.0, 1.0);
  const double disc = std::max(0.0, 1.0 - 4.0 * lambda * (1.0 - lambda) * (1.0 - f * f));
  return 0.5 * (1.0 - std::sqrt(disc));
}

namespace detail {

/// C_i = sqrt(q_i) U_i^dagger sqrt(rho_i); sigma_ij = <C_i, C_j>_HS.
inline Matrix gauge_factor(double q, const Matrix& sqrt_rho, const Matrix& u) {
  return std::sqrt(q) * (u.adjoint() * sqrt_rho);
}

inline complex hs_inner(const Matrix& a, const Matrix& b) {
  complex s{0.0, 0.0};
  const auto ea = a.entries(), eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) s += std::conj(ea[k]) * eb[k];
  return s;
}

inline Matrix gram(const std::vector<Matrix>& factors) {
  const std::size_t m = factors.size();
  Matrix g(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      g(i, j) = hs_inner(factors[i], factors[j]);
      g(j, i) = std::conj(g(i, j));
    }
  return g;
}

}  // namespace detail

/// sigma_ij = sqrt(q_i q_j) tr(sqrt(rho_i) U_i U_j^dagger sqrt(rho_j)).
inline DensityMatrix gauge_correlation_matrix(const Ensemble& e, const std::vector<Matrix>& unitaries) {
  if (unitaries.size() != e.size()) throw DimensionMismatch("gauge_correlation_matrix: one unitary per state");
  std::vector<Matrix> factors;
  factors.reserve(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (unitaries[i].rows() != e.dim() || !unitaries[i].is_square()) {
      throw DimensionMismatch("gauge_correlation_matrix: unitary dimension mismatch");
    }
    factors.push_back(detail::gauge_factor(e.weights()[i], sqrtm_psd(e.states()[i].matrix()), unitaries[i]));
  }
  return DensityMatrix::trusted(detail::gram(factors));
}

/// Unitaries {W^dagger, 1}, W the polar unitary of rho2^{1/2} rho1^{1/2};
/// they make the off-diagonal correlation entry equal to sqrt(q1 q2) sqrt F.
inline std::vector<Matrix> polar_aligned_unitaries(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  const Matrix a = sqrtm_psd(rho2.matrix()) * sqrtm_psd(rho1.matrix());
  return {polar_decompose(a).unitary.adjoint(), Matrix::identity(rho1.dim())};
}

struct GaugeSearchResult {
  std::vector<Matrix> unitaries;
  DensityMatrix sigma;
  Nats entropy;
  std::vector<Nats> best_after_restart;  // running best, one value per restart
};

struct GaugeSearchOptions {
  int restarts = 8;
  int steps = 500;
  double initial_step = 0.5;
  double decay = 0.9;
  int rejection_streak = 10;
};

/// Minimizes S(sigma) over the unitaries of gauge_correlation_matrix.
/// Two-element ensembles use the closed-form optimum. Larger ensembles use
/// random-restart hill climbing: U_j <- exp(i eps H) U_j with H a normalized
/// random Hermitian matrix, accepted when the entropy does not increase, eps
/// shrinking by `decay` after every `rejection_streak` rejections. Restart 0
/// starts from the identities, so the result never exceeds that value. The
/// result is an upper bound on the true minimum only.
inline GaugeSearchResult minimize_gauge_entropy(const Ensemble& e, Rng& rng, GaugeSearchOptions opts = {}) {
  const std::size_t m = e.size();
  const std::size_t d = e.dim();
  if (m < 2) throw InvalidArgument("minimize_gauge_entropy needs at least two ensemble members");
  if (m == 2) {
    auto u = polar_aligned_unitaries(e.states()[0], e.states()[1]);
    auto sigma = gauge_correlation_matrix(e, u);
    const Nats s = von_neumann_entropy(sigma);
    return {std::move(u), std::move(sigma), s, {s}};
  }

  std::vector<Matrix> sqrt_rho;
  for (const auto& s : e.states()) sqrt_rho.push_back(sqrtm_psd(s.matrix()));
  auto factors_of = [&](const std::vector<Matrix>& us) {
    std::vector<Matrix> f;
    for (std::size_t i = 0; i < m; ++i) f.push_back(detail::gauge_factor(e.weights()[i], sqrt_rho[i], us[i]));
    return f;
  };
  auto entropy_of = [](const std::vector<Matrix>& factors) {
    return entropy_of_spectrum(eigvals_hermitian(detail::gram(factors)));
  };

  std::vector<Matrix> best_u(m, Matrix::identity(d));
  Nats best = entropy_of(factors_of(best_u));
  std::vector<Nats> trace;
  const std::uint64_t base = rng.next_u64();

  for (int r = 0; r < opts.restarts; ++r) {
    Rng local(Rng::derive_seed(base, static_cast<std::uint64_t>(r)));
    std::vector<Matrix> cur(m, Matrix::identity(d));
    if (r > 0) {
      for (std::size_t i = 1; i < m; ++i) cur[i] = random_unitary(d, local);
    }
    auto factors = factors_of(cur);
    Nats value = entropy_of(factors);
    double eps = opts.initial_step;
    int streak = 0;
    for (int step = 0; step < opts.steps; ++step) {
      // U_0 stays fixed: sigma only depends on the relative unitaries.
      const std::size_t j = 1 + local.index(m - 1);
      Matrix h = random_hermitian(d, local);
      h *= complex{1.0 / std::max(h.frobenius_norm(), 1e-300), 0.0};
      Matrix candidate = unitary_exp(h, eps) * cur[j];
      auto trial = factors;
      trial[j] = detail::gauge_factor(e.weights()[j], sqrt_rho[j], candidate);
      const Nats v = entropy_of(trial);
      if (v <= value) {
        value = v;
        cur[j] = std::move(candidate);
        factors = std::move(trial);
        streak = 0;
      } else if (++streak >= opts.rejection_streak) {
        eps *= opts.decay;
        streak = 0;
      }
    }
    if (value < best) {
      best = value;
      best_u = cur;
    }
    trace.push_back(best);
  }
  auto sigma = gauge_correlation_matrix(e, best_u);
  return {std::move(best_u), std::move(sigma), best, std::move(trace)};
}

/// max over random square-unitary Kraus gauges of
/// chi({tr K_i K_i^dagger / N, K_i K_i^dagger / tr K_i K_i^dagger}) <= S(Phi),
/// and S(sigma(Phi, 1/N)) = S(Phi).
inline BoundLedger certify_entop(const KrausChannel& phi, Rng& rng, int gauge_trials, double tol = kBoundTol,
                                 std::string instance = {}) {
  BoundLedger ledger(std::move(instance));
  const auto mixed = maximally_mixed(phi.dim());
  const Nats s_map = map_entropy(phi);
  ledger.add_eq("exchange_eq_map_entropy", exchange_entropy(phi, mixed), s_map, tol);
  Nats max_chi = holevo_chi(measurement_ensemble(phi, mixed));
  for (int t = 0; t < gauge_trials; ++t) {
    const auto gauged = gauge_transform(phi, random_unitary(phi.size(), rng));
    max_chi = std::max(max_chi, holevo_chi(measurement_ensemble(gauged, mixed)));
  }
  ledger.add_le("entop_max_chi_le_map_entropy", max_chi, s_map, tol);
  return ledger;
}

/// QJS(rho1, rho2) <= H2((1 - sqrt F)/2); equality for pure pairs; D_T <= D_E
/// for commuting diagonal pairs.
inline BoundLedger certify_qjsd_bound(const DensityMatrix& rho1, const DensityMatrix& rho2, double tol = kBoundTol,
                                      std::string instance = {}) {
  BoundLedger ledger(std::move(instance));
  const Nats qjs = qjsd(rho1, rho2, 0.5);
  const Nats bound = binary_entropy(0.5 * (1.0 - std::clamp(root_fidelity(rho1, rho2), 0.0, 1.0)));
  ledger.add_le("qjs_le_H2bound", qjs, bound, tol);
  if (is_pure(rho1) && is_pure(rho2)) ledger.add_eq("pure_qjs_eq_H2bound", qjs, bound, tol);
  if (is_diagonal(rho1.matrix()) && is_diagonal(rho2.matrix())) {
    const auto p = diagonal_distribution(rho1);
    const auto q = diagonal_distribution(rho2);
    ledger.add_le("dt_le_de", transmission_distance(p, q), entropic_distance_classical(p, q), tol);
  }
  return ledger;
}

/// Triangle inequality for D_T and D_E on a classical triple.
inline BoundLedger check_triangle(const ClassicalDistribution& a, const ClassicalDistribution& b,
                                  const ClassicalDistribution& c, double tol = 1e-9, std::string instance = {}) {
  BoundLedger ledger(std::move(instance));
  ledger.add_le("triangle_dt", transmission_distance(a, c), transmission_distance(a, b) + transmission_distance(b, c),
                tol);
  ledger.add_le("triangle_de", entropic_distance_classical(a, c),
                entropic_distance_classical(a, b) + entropic_distance_classical(b, c), tol);
  return ledger;
}

/// Triangle inequality for the quantum entropic distance.
inline BoundLedger check_triangle_quantum(const DensityMatrix& a, const DensityMatrix& b, const DensityMatrix& c,
                                          double tol = 1e-9, std::string instance = {}) {
  BoundLedger ledger(std::move(instance));
  ledger.add_le("triangle_de_quantum", entropic_distance(a, c), entropic_distance(a, b) + entropic_distance(b, c), tol);
  return ledger;
}

/// Second finite differences of D_E(D_B) = sqrt(H2(D_B^2/4)) on D_B = step * k,
/// k = 0..points-1, must be non-positive.
inline BoundLedger check_de_concavity(int points = 20, double step = 0.05, double tol = 1e-9,
                                      std::string instance = {}) {
  BoundLedger ledger(std::move(instance));
  for (int k = 1; k + 1 < points; ++k) {
    const double x = step * k;
    const double second = entropic_distance_from_bures(x - step) - 2.0 * entropic_distance_from_bures(x) +
                          entropic_distance_from_bures(x + step);
    ledger.add_le("de_concave_at_" + std::to_string(k), second, 0.0, tol);
  }
  return ledger;
}

}  // namespace holevo
