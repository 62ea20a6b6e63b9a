#include <gtest/gtest.h>

#include <cmath>

#include "holevo/bounds.hpp"
#include "support.hpp"

namespace holevo {
namespace {

DensityMatrix ket0() { return DensityMatrix::pure(Matrix::basis(2, 0)); }
DensityMatrix ket1() { return DensityMatrix::pure(Matrix::basis(2, 1)); }
DensityMatrix plus_state() { return DensityMatrix::pure(testing::ket_plus()); }

// (|000> + |111>) / sqrt 2
DensityMatrix ghz() {
  Matrix psi(8, 1);
  psi(0, 0) = 1.0 / std::sqrt(2.0);
  psi(7, 0) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::pure(psi);
}

void expect_all_pass(const BoundLedger& ledger) {
  for (const auto& e : ledger.entries()) EXPECT_TRUE(e.pass) << e.name << " lhs=" << e.lhs << " rhs=" << e.rhs;
}

double lhs_of(const BoundLedger& ledger, std::string_view name) {
  const auto* e = ledger.find(name);
  EXPECT_NE(e, nullptr) << name;
  return e ? e->lhs : std::nan("");
}

TEST(BoundLedger, SlackAndPassSemantics) {
  BoundLedger l("x");
  l.add_le("a", 1.0, 2.0, 0.0);
  l.add_le("b", 2.0, 1.0, 0.5);
  l.add_le("c", 1.0, 1.0 - 1e-9, 1e-8);
  l.add_eq("d", 1.0, 1.0 + 1e-12, 1e-8);
  EXPECT_EQ(l.size(), 4u);
  EXPECT_DOUBLE_EQ(l.entries()[0].slack, 1.0);
  EXPECT_FALSE(l.entries()[1].pass);
  EXPECT_TRUE(l.entries()[2].pass);
  EXPECT_TRUE(l.entries()[3].pass);
  EXPECT_EQ(l.failures(), 1u);
  EXPECT_DOUBLE_EQ(l.min_slack(), -1.0);
  EXPECT_EQ(l.entries()[0].instance, "x");
}

TEST(Ssa, ProductStateSaturatesSecondForm) {
  Rng rng(1);
  const auto a = random_density(2, rng), b = random_density(2, rng), c = random_density(3, rng);
  const TripartiteState omega(DensityMatrix::trusted(kron(kron(a.matrix(), b.matrix()), c.matrix())), {2, 2, 3});
  const auto ledger = check_ssa(omega);
  expect_all_pass(ledger);
  EXPECT_NEAR(ledger.find("ssa_s123+s2_le_s12+s23")->slack, 0.0, 1e-10);
  const double sa = von_neumann_entropy(a), sb = von_neumann_entropy(b), sc = von_neumann_entropy(c);
  EXPECT_NEAR(ledger.find("ssa_s1+s3_le_s12+s23")->slack, 2.0 * sb, 1e-10);
  EXPECT_NEAR(lhs_of(ledger, "ssa_s1+s3_le_s12+s23"), sa + sc, 1e-10);
}

TEST(Ssa, GhzState) {
  const TripartiteState omega(ghz(), {2, 2, 2});
  const auto ledger = check_ssa(omega);
  expect_all_pass(ledger);
  const double ln2 = std::log(2.0);
  EXPECT_NEAR(lhs_of(ledger, "ssa_s1+s3_le_s12+s23"), 2.0 * ln2, 1e-10);
  EXPECT_NEAR(ledger.find("ssa_s1+s3_le_s12+s23")->rhs, 2.0 * ln2, 1e-10);
  EXPECT_NEAR(lhs_of(ledger, "ssa_s123+s2_le_s12+s23"), ln2, 1e-10);
}

TEST(Ssa, RandomStatesAndPurifiedBookkeeping) {
  Rng rng(2);
  for (int t = 0; t < 40; ++t) {
    const std::size_t d3 = 2 + (t % 2);
    const TripartiteState omega(random_density(4 * d3, rng), {2, 2, d3});
    expect_all_pass(check_ssa(omega));
    if (t % 4 == 0) {
      const auto p = check_ssa_purified(omega);
      EXPECT_EQ(p.size(), 6u);
      expect_all_pass(p);
    }
  }
}

TEST(Ssa, DimensionMismatch) {
  EXPECT_THROW(TripartiteState(maximally_mixed(8), {2, 2, 3}), DimensionMismatch);
}

TEST(Omega123, UnitaryChannel) {
  Rng rng(3);
  const Matrix u = random_unitary(3, rng);
  const auto rho = random_density(3, rng);
  const auto omega = build_omega123(unitary_channel(u), rho);
  EXPECT_EQ(omega.state.dim(), 3u);
  EXPECT_LE(max_abs_diff(omega.state.matrix(), u * rho.matrix() * u.adjoint()), 1e-14);
}

TEST(Omega123, PureInputGivesPureState) {
  Rng rng(4);
  const auto phi = random_channel(2, 3, rng);
  const auto omega = build_omega123(phi, random_pure_density(2, rng));
  EXPECT_TRUE(is_pure(omega.state));
  EXPECT_NEAR(von_neumann_entropy(omega.state), 0.0, 1e-10);
}

TEST(Omega123, IsometryAndMarginalIdentities) {
  Rng rng(5);
  for (int t = 0; t < 40; ++t) {
    const std::size_t d = 2 + rng.index(3), m = 1 + rng.index(5);
    const auto phi = random_channel(d, m, rng);
    const Matrix f = omega_isometry(phi);
    EXPECT_LE(max_abs_diff(f.adjoint() * f, Matrix::identity(d)), 1e-12);
    const auto rho = t % 4 == 0 ? random_pure_density(d, rng) : random_density(d, rng);
    const auto ledger = verify_omega123(phi, rho);
    EXPECT_EQ(ledger.size(), 4u);
    expect_all_pass(ledger);
  }
}

TEST(Prop2, ProjectiveKrausSaturates) {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = 2 + rng.index(3);
    const auto phi = projective_channel(random_unitary(d, rng));
    ASSERT_TRUE(is_projective(phi));
    const auto ledger = certify_prop2(phi, random_density(d, rng));
    expect_all_pass(ledger);
    EXPECT_NE(ledger.find("projective_chi_eq_exchange"), nullptr);
    EXPECT_LE(lhs_of(ledger, "projective_chi_eq_exchange"), 1e-8);
    EXPECT_LE(lhs_of(ledger, "projective_avg_le_0"), 1e-9);
    EXPECT_NE(ledger.find("S(rho)_le_S(rho')"), nullptr);  // projective measurements are bistochastic
  }
}

TEST(Prop2, UnitaryChannelCollapses) {
  Rng rng(7);
  const auto ledger = certify_prop2(unitary_channel(random_unitary(3, rng)), random_density(3, rng));
  expect_all_pass(ledger);
  EXPECT_NEAR(lhs_of(ledger, "chi_le_exchange"), 0.0, 1e-12);
  EXPECT_NEAR(ledger.find("chi_le_exchange")->rhs, 0.0, 1e-12);
  EXPECT_NEAR(ledger.find("exchange_le_H(q)")->rhs, 0.0, 1e-12);
}

TEST(Prop2, RandomInstances) {
  Rng rng(8);
  for (int t = 0; t < 60; ++t) {
    const std::size_t d = 2 + rng.index(3), m = 1 + rng.index(5);
    const auto ledger = certify_prop2(random_channel(d, m, rng), random_density(d, rng));
    EXPECT_GE(ledger.size(), 4u);
    expect_all_pass(ledger);
  }
}

TEST(Prop2, NonBistochasticSkipsEntropyIncrease) {
  Rng rng(9);
  const auto ledger = certify_prop2(random_channel(3, 2, rng), random_density(3, rng));
  EXPECT_EQ(ledger.find("S(rho)_le_S(rho')"), nullptr);
}

TEST(Lindblad, PureInputSaturatesLeftSide) {
  Rng rng(10);
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = 2 + rng.index(3);
    const auto ledger = certify_lindblad(random_channel(d, 1 + rng.index(5), rng), random_pure_density(d, rng));
    expect_all_pass(ledger);
    EXPECT_LE(lhs_of(ledger, "pure_output_eq_exchange"), 1e-8);
    EXPECT_NEAR(ledger.find("lindblad_lower")->slack, 0.0, 1e-8);
  }
}

TEST(Lindblad, UnitaryAndRandom) {
  Rng rng(11);
  const auto rho = random_density(3, rng);
  const auto u = certify_lindblad(unitary_channel(random_unitary(3, rng)), rho);
  expect_all_pass(u);
  EXPECT_NEAR(lhs_of(u, "lindblad_lower"), von_neumann_entropy(rho), 1e-10);
  for (int t = 0; t < 40; ++t) {
    const std::size_t d = 2 + rng.index(3);
    expect_all_pass(certify_lindblad(random_channel(d, 1 + rng.index(5), rng), random_density(d, rng)));
  }
}

TEST(Coherent, UnitaryFirstStage) {
  Rng rng(12);
  const Matrix u = random_unitary(2, rng);
  const auto phi2 = random_channel(2, 3, rng);
  const auto rho = random_density(2, rng);
  const auto ledger = certify_coherent(unitary_channel(u), phi2, rho);
  expect_all_pass(ledger);
  const DensityMatrix rotated = DensityMatrix::trusted(u * rho.matrix() * u.adjoint());
  EXPECT_NEAR(ledger.find("icoh12_le_avg2")->rhs, von_neumann_entropy(apply(phi2, rotated)), 1e-10);
}

TEST(Coherent, DephasingThenIdentityOnPlus) {
  const auto ledger = certify_coherent(dephasing_channel(2), identity_channel(2), plus_state());
  expect_all_pass(ledger);
  EXPECT_NEAR(lhs_of(ledger, "icoh12_le_avg2"), 0.0, 1e-12);
  EXPECT_NEAR(ledger.find("icoh12_le_avg2")->rhs, 0.0, 1e-12);
}

TEST(Coherent, RandomInstances) {
  Rng rng(13);
  for (int t = 0; t < 40; ++t) {
    const std::size_t d = 2 + rng.index(3);
    const auto ledger = certify_coherent(random_channel(d, 1 + rng.index(5), rng),
                                         random_channel(d, 1 + rng.index(5), rng), random_density(d, rng));
    EXPECT_EQ(ledger.size(), 3u);
    expect_all_pass(ledger);
  }
  EXPECT_THROW(certify_coherent(identity_channel(2), identity_channel(3), maximally_mixed(2)), DimensionMismatch);
}

TEST(OptimalSigma, Examples) {
  Rng rng(14);
  const auto rho = random_density(2, rng);
  const auto same = optimal_sigma_two(rho, rho, 0.5);
  const auto ev = eigvals_hermitian(same.matrix());
  EXPECT_NEAR(ev[0], 0.0, 1e-9);
  EXPECT_NEAR(ev[1], 1.0, 1e-9);

  const auto orth = optimal_sigma_two(ket0(), ket1(), 0.3);
  EXPECT_NEAR(std::abs(orth(0, 1)), 0.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(orth), testing::h2(0.3), 1e-12);

  const auto zp = optimal_sigma_two(ket0(), plus_state(), 0.5);
  const auto zev = eigvals_hermitian(zp.matrix());
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(zev[0], (1 - s) / 2, 1e-12);
  EXPECT_NEAR(zev[1], (1 + s) / 2, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(zp), testing::kChiZeroPlus, 1e-9);
  EXPECT_THROW(optimal_sigma_two(ket0(), ket1(), 1.5), InvalidLambda);
}

TEST(OptimalSigma, MuMatchesSpectrum) {
  Rng rng(15);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_density(3, rng), b = random_density(3, rng);
    const double lambda = rng.uniform();
    const auto sigma = optimal_sigma_two(a, b, lambda);
    EXPECT_NEAR(eigvals_hermitian(sigma.matrix())[0], optimal_sigma_two_mu(root_fidelity(a, b), lambda), 1e-12);
  }
  EXPECT_NEAR(optimal_sigma_two_mu(0.6, 0.5), 0.5 * (1.0 - 0.6), 1e-15);
}

TEST(GaugeCorrelation, IdentityGaugeOnIdenticalPureStates) {
  Rng rng(16);
  const auto psi = random_pure_density(3, rng);
  const ClassicalDistribution q({0.2, 0.3, 0.5});
  const Ensemble e(q, {psi, psi, psi});
  const auto sigma = gauge_correlation_matrix(e, {Matrix::identity(3), Matrix::identity(3), Matrix::identity(3)});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(sigma(i, j) - std::sqrt(q[i] * q[j])), 0.0, 1e-9);
  EXPECT_NEAR(von_neumann_entropy(sigma), 0.0, 1e-9);
}

TEST(GaugeCorrelation, PolarAlignedReproducesOptimum) {
  Rng rng(17);
  for (int t = 0; t < 30; ++t) {
    const std::size_t d = 2 + (t % 2);
    const auto a = random_density(d, rng), b = random_density(d, rng);
    const double lambda = 0.1 + 0.8 * rng.uniform();
    const Ensemble e(ClassicalDistribution({lambda, 1.0 - lambda}), {a, b});
    const auto sigma = gauge_correlation_matrix(e, polar_aligned_unitaries(a, b));
    const auto opt = optimal_sigma_two(a, b, lambda);
    EXPECT_NEAR(std::abs(sigma(0, 1)), std::abs(opt(0, 1)), 1e-9);
    EXPECT_NEAR(von_neumann_entropy(sigma), von_neumann_entropy(opt), 1e-8);
  }
}

TEST(GaugeCorrelation, RandomGaugesNeverBeatOptimumOrChi) {
  Rng rng(18);
  for (int t = 0; t < 10; ++t) {
    const auto a = random_density(2, rng), b = random_density(2, rng);
    const Ensemble e(ClassicalDistribution({0.5, 0.5}), {a, b});
    const double s_opt = von_neumann_entropy(optimal_sigma_two(a, b, 0.5));
    const double chi = holevo_chi(e);
    for (int g = 0; g < 50; ++g) {
      const auto sigma = gauge_correlation_matrix(e, {random_unitary(2, rng), random_unitary(2, rng)});
      EXPECT_NEAR(sigma.matrix().trace().real(), 1.0, 1e-12);
      const double s = von_neumann_entropy(sigma);
      EXPECT_GE(s, s_opt - 1e-8);
      EXPECT_GE(s, chi - 1e-8);
    }
  }
}

TEST(GaugeCorrelation, Validation) {
  const Ensemble e(ClassicalDistribution({0.5, 0.5}), {ket0(), ket1()});
  EXPECT_THROW(gauge_correlation_matrix(e, {Matrix::identity(2)}), DimensionMismatch);
  EXPECT_THROW(gauge_correlation_matrix(e, {Matrix::identity(2), Matrix::identity(3)}), DimensionMismatch);
}

TEST(GaugeSearch, TwoElementsIsClosedForm) {
  Rng rng(19);
  const auto a = random_density(3, rng), b = random_density(3, rng);
  const Ensemble e(ClassicalDistribution({0.4, 0.6}), {a, b});
  const auto r = minimize_gauge_entropy(e, rng);
  EXPECT_NEAR(r.entropy, von_neumann_entropy(optimal_sigma_two(a, b, 0.4)), 1e-8);
}

TEST(GaugeSearch, OrthogonalPureEnsemble) {
  Rng rng(20);
  const Matrix u = random_unitary(3, rng);
  std::vector<DensityMatrix> states;
  for (std::size_t k = 0; k < 3; ++k) {
    Matrix col(3, 1);
    for (std::size_t r = 0; r < 3; ++r) col(r, 0) = u(r, k);
    states.push_back(DensityMatrix::pure(col));
  }
  const ClassicalDistribution q({0.2, 0.3, 0.5});
  const auto r = minimize_gauge_entropy(Ensemble(q, states), rng, {.restarts = 2, .steps = 50});
  EXPECT_NEAR(r.entropy, shannon_entropy(q), 1e-9);
}

TEST(GaugeSearch, ThreeElementBoundsAndMonotonicity) {
  Rng rng(21);
  const auto e = random_ensemble(3, 2, rng);
  const std::vector<Matrix> ident(3, Matrix::identity(2));
  const double start = von_neumann_entropy(gauge_correlation_matrix(e, ident));
  Rng a(5);
  const auto r = minimize_gauge_entropy(e, a, {.restarts = 4, .steps = 150});
  EXPECT_LE(r.entropy, start + 1e-12);
  EXPECT_GE(r.entropy, holevo_chi(e) - 1e-8);
  EXPECT_NEAR(von_neumann_entropy(r.sigma), r.entropy, 1e-9);
  for (std::size_t k = 1; k < r.best_after_restart.size(); ++k)
    EXPECT_LE(r.best_after_restart[k], r.best_after_restart[k - 1]);
  // more restarts with the same seed never report a worse value
  Rng b(5);
  const auto more = minimize_gauge_entropy(e, b, {.restarts = 6, .steps = 150});
  EXPECT_LE(more.entropy, r.entropy);
  EXPECT_THROW(minimize_gauge_entropy(Ensemble(ClassicalDistribution({1.0}), {ket0()}), a), InvalidArgument);
}

TEST(Entop, Examples) {
  Rng rng(22);
  const auto u = certify_entop(unitary_channel(random_unitary(2, rng)), rng, 5);
  expect_all_pass(u);
  EXPECT_NEAR(lhs_of(u, "entop_max_chi_le_map_entropy"), 0.0, 1e-12);
  const auto deph = certify_entop(dephasing_channel(2), rng, 20);
  expect_all_pass(deph);
  EXPECT_NEAR(deph.find("entop_max_chi_le_map_entropy")->rhs, std::log(2.0), 1e-12);
}

TEST(Entop, RandomChannels) {
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    const auto phi = random_channel(2 + rng.index(3), 1 + rng.index(5), rng);
    expect_all_pass(certify_entop(phi, rng, 10));
  }
}

TEST(QjsdBound, Examples) {
  Rng rng(24);
  const auto rho = random_density(2, rng);
  const auto same = certify_qjsd_bound(rho, rho);
  expect_all_pass(same);
  EXPECT_NEAR(lhs_of(same, "qjs_le_H2bound"), 0.0, 1e-10);
  EXPECT_NEAR(same.find("qjs_le_H2bound")->rhs, 0.0, 1e-4);

  const auto zp = certify_qjsd_bound(ket0(), plus_state());
  expect_all_pass(zp);
  EXPECT_NEAR(lhs_of(zp, "qjs_le_H2bound"), testing::kChiZeroPlus, 1e-9);
  EXPECT_NEAR(zp.find("qjs_le_H2bound")->rhs, testing::kChiZeroPlus, 1e-9);
  EXPECT_NE(zp.find("pure_qjs_eq_H2bound"), nullptr);
}

TEST(QjsdBound, RandomPairs) {
  Rng rng(25);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_density(2, rng), b = random_density(2, rng);
    const auto ledger = certify_qjsd_bound(a, b);
    expect_all_pass(ledger);
    EXPECT_GT(ledger.find("qjs_le_H2bound")->slack, 0.0);
    expect_all_pass(certify_qjsd_bound(random_pure_density(3, rng), random_pure_density(3, rng)));
    const auto p = random_distribution(3, rng), q = random_distribution(3, rng);
    const auto diag = certify_qjsd_bound(DensityMatrix::trusted(Matrix::diagonal(p.probs())),
                                         DensityMatrix::trusted(Matrix::diagonal(q.probs())));
    EXPECT_NE(diag.find("dt_le_de"), nullptr);
    expect_all_pass(diag);
  }
}

TEST(Metric, TriangleOnRandomTriples) {
  Rng rng(26);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.index(6);
    expect_all_pass(
        check_triangle(random_distribution(n, rng), random_distribution(n, rng), random_distribution(n, rng)));
    expect_all_pass(check_triangle_quantum(random_density(2, rng), random_density(2, rng), random_density(2, rng)));
  }
}

TEST(Metric, ConcavityGrid) {
  const auto ledger = check_de_concavity();
  EXPECT_EQ(ledger.size(), 18u);
  expect_all_pass(ledger);
}

}  // namespace
}  // namespace holevo
