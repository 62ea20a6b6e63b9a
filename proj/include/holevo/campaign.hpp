#pragma once

// Seeded verification campaigns that drive every certifier over random
// instances, and the data behind the D_T <= D_E figure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "holevo/bounds.hpp"
#include "holevo/channels.hpp"
#include "holevo/distances.hpp"
#include "holevo/states.hpp"

namespace holevo {

inline const std::vector<std::string>& all_checks() {
  static const std::vector<std::string> checks{"ssa", "prop2", "lindblad", "coherent", "entop", "qjsd", "metric"};
  return checks;
}

struct CampaignConfig {
  std::uint64_t seed = 42;
  std::vector<std::size_t> dims{2, 3, 4};
  std::vector<std::size_t> kraus_counts{1, 2, 3, 4, 5};
  int instances = 200;  // per dimension and check
  double tolerance = kBoundTol;
  std::set<std::string> checks{all_checks().begin(), all_checks().end()};
  int gauge_trials = 20;

  /// Empty when valid, otherwise the first violated rule.
  std::string validate() const {
    if (instances < 1) return "instances must be at least 1";
    if (!std::isfinite(tolerance)) return "tolerance must be finite";
    if (dims.empty()) return "dims must be non-empty";
    if (kraus_counts.empty()) return "kraus counts must be non-empty";
    for (auto d : dims)
      if (d < 1 || d > 16) return "dims must lie in [1, 16]";
    for (auto m : kraus_counts)
      if (m < 1 || m > 16) return "kraus counts must lie in [1, 16]";
    if (checks.empty()) return "no checks selected";
    for (const auto& c : checks)
      if (std::find(all_checks().begin(), all_checks().end(), c) == all_checks().end()) return "unknown check '" + c + "'";
    return {};
  }
};

struct CampaignSummary {
  std::size_t instances = 0;
  std::size_t entries = 0;
  std::size_t violations = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  /// Most negative (slack + tol) over failing entries, 0 when none fail.
  double worst_violation = 0.0;

  void add(const BoundLedger& ledger) {
    ++instances;
    entries += ledger.size();
    for (const auto& e : ledger.entries()) {
      min_slack = std::min(min_slack, e.slack);
      if (!e.pass) {
        ++violations;
        worst_violation = std::min(worst_violation, e.slack + e.tol);
      }
    }
  }
};

namespace detail {

inline std::uint64_t check_index(const std::string& check) {
  const auto& all = all_checks();
  return static_cast<std::uint64_t>(std::find(all.begin(), all.end(), check) - all.begin());
}

inline std::string descriptor(const std::string& check, std::size_t d, std::size_t m, int k, std::uint64_t seed) {
  std::ostringstream s;
  s << check << "/d=" << d << "/m=" << m << "/i=" << k << "/seed=" << seed;
  return s.str();
}

}  // namespace detail

/// Seed of instance k of dimension d. Checks that share (channel, state)
/// instances pass the same `stream`.
inline std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t stream, std::size_t d, int k) {
  return Rng::derive_seed(Rng::derive_seed(Rng::derive_seed(seed, stream), d), static_cast<std::uint64_t>(k));
}

/// Random (channel, state) pair used by the prop2, lindblad and coherent
/// campaigns; every fourth state is pure.
struct ChannelInstance {
  KrausChannel phi;
  KrausChannel phi2;
  DensityMatrix rho;
};

inline ChannelInstance make_channel_instance(Rng& rng, std::size_t d, std::size_t m, std::size_t m2, int k) {
  KrausChannel phi = random_channel(d, m, rng);
  KrausChannel phi2 = random_channel(d, m2, rng);
  DensityMatrix rho = (k % 4 == 3) ? random_pure_density(d, rng) : random_density(d, rng);
  return {std::move(phi), std::move(phi2), std::move(rho)};
}

/// Runs one instance of one check.
inline BoundLedger run_instance(const CampaignConfig& cfg, const std::string& check, std::size_t d, int k) {
  const std::size_t m = cfg.kraus_counts[static_cast<std::size_t>(k) % cfg.kraus_counts.size()];
  const std::size_t m2 = cfg.kraus_counts[static_cast<std::size_t>(k + 1) % cfg.kraus_counts.size()];
  const double tol = cfg.tolerance;
  const bool shares_instances = check == "prop2" || check == "lindblad" || check == "coherent";
  const std::uint64_t stream = shares_instances ? 1000 : detail::check_index(check);
  const std::uint64_t seed = instance_seed(cfg.seed, stream, d, k);
  Rng rng(seed);
  const std::string id = detail::descriptor(check, d, m, k, seed);

  if (check == "ssa") {
    BoundLedger ledger(id);
    if (k % 4 == 3) {
      // A state produced by the isometry F of the exchange-entropy argument.
      const auto phi = random_channel(d, m, rng);
      const auto rho = random_density(d, rng);
      ledger.append(check_ssa(build_omega123(phi, rho), tol, id));
    } else {
      const TripartiteState omega(random_density(4 * d, rng), {2, 2, d});
      ledger.append(check_ssa(omega, tol, id));
      if (k % 5 == 0 && 4 * d <= 12) ledger.append(check_ssa_purified(omega, tol, id));
    }
    return ledger;
  }
  if (shares_instances) {
    const auto inst = make_channel_instance(rng, d, m, m2, k);
    if (check == "prop2") {
      BoundLedger ledger = certify_prop2(inst.phi, inst.rho, tol, id);
      ledger.append(verify_omega123(inst.phi, inst.rho, tol, id));
      return ledger;
    }
    if (check == "lindblad") return certify_lindblad(inst.phi, inst.rho, tol, id);
    return certify_coherent(inst.phi, inst.phi2, inst.rho, tol, id);
  }
  if (check == "entop") {
    const auto phi = random_channel(d, m, rng);
    return certify_entop(phi, rng, cfg.gauge_trials, tol, id);
  }
  if (check == "qjsd") {
    switch (k % 4) {
      case 0: {
        const auto a = random_pure_density(d, rng);
        const auto b = random_pure_density(d, rng);
        return certify_qjsd_bound(a, b, tol, id);
      }
      case 1: {
        const auto p = random_distribution(d, rng);
        const auto q = random_distribution(d, rng);
        return certify_qjsd_bound(DensityMatrix::trusted(Matrix::diagonal(p.probs())),
                                  DensityMatrix::trusted(Matrix::diagonal(q.probs())), tol, id);
      }
      default: {
        const auto a = random_density(d, rng);
        const auto b = random_density(d, rng);
        return certify_qjsd_bound(a, b, tol, id);
      }
    }
  }
  // metric: classical triple with 2..8 bins, a quantum triple in dimension d,
  // and the concavity grid once per dimension.
  BoundLedger ledger(id);
  const std::size_t bins = 2 + static_cast<std::size_t>(k % 7);
  const auto a = random_distribution(bins, rng);
  const auto b = random_distribution(bins, rng);
  const auto c = random_distribution(bins, rng);
  const double metric_tol = std::min(tol, 1e-9);
  ledger.append(check_triangle(a, b, c, metric_tol, id));
  const auto qa = random_density(d, rng);
  const auto qb = random_density(d, rng);
  const auto qc = random_density(d, rng);
  ledger.append(check_triangle_quantum(qa, qb, qc, metric_tol, id));
  if (k == 0) ledger.append(check_de_concavity(20, 0.05, metric_tol, id));
  return ledger;
}

/// Runs every selected check over dims x instances in a fixed order and hands
/// each ledger to `sink`. Output order depends only on the config.
inline CampaignSummary run_campaign(const CampaignConfig& cfg, const std::function<void(const BoundLedger&)>& sink) {
  CampaignSummary summary;
  for (const auto& check : all_checks()) {
    if (!cfg.checks.contains(check)) continue;
    for (std::size_t d : cfg.dims) {
      for (int k = 0; k < cfg.instances; ++k) {
        const BoundLedger ledger = run_instance(cfg, check, d, k);
        summary.add(ledger);
        if (sink) sink(ledger);
      }
    }
  }
  return summary;
}

// Figure data: D_T and D_E along two one-parameter families of binary
// distributions, P = (p, 1-p) against Q = (1-p, p) (panel a) or Q = (1, 0)
// (panel b).

struct FigureRow {
  double p;
  double d_t;
  double d_e;
};

inline std::vector<FigureRow> figure2_rows(char panel, int grid) {
  if (panel != 'a' && panel != 'b') throw InvalidArgument("panel must be 'a' or 'b'");
  if (grid < 2) throw InvalidArgument("grid must be at least 2");
  std::vector<FigureRow> rows;
  rows.reserve(static_cast<std::size_t>(grid) + 1);
  for (int k = 0; k <= grid; ++k) {
    const double p = static_cast<double>(k) / grid;
    const ClassicalDistribution pp({p, 1.0 - p});
    const ClassicalDistribution qq = panel == 'a' ? ClassicalDistribution({1.0 - p, p}) : ClassicalDistribution({1.0, 0.0});
    rows.push_back({p, transmission_distance(pp, qq), entropic_distance_classical(pp, qq)});
  }
  return rows;
}

/// CSV with header p,d_t,d_e and 9 significant digits.
inline void write_figure2_csv(std::ostream& out, const std::vector<FigureRow>& rows) {
  out << "p,d_t,d_e\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g\n", r.p, r.d_t, r.d_e);
    out << buf;
  }
}

}  // namespace holevo
