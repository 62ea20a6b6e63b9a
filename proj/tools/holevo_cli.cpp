// holevo: verification campaigns, entropic quantities from JSON files and
// the D_T <= D_E figure data.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holevo/holevo.hpp"

namespace {

using holevo::io::json;

constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;

struct VerifyFlags {
  std::optional<std::uint64_t> seed;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> kraus;
  std::optional<int> instances;
  std::optional<double> tol;
  std::vector<std::string> checks;
  std::string config_path;
  std::string out_path;
};

/// defaults < HOLEVO_SEED < config file < flags
holevo::CampaignConfig resolve_config(const VerifyFlags& flags) {
  holevo::CampaignConfig cfg;
  if (const char* env = std::getenv("HOLEVO_SEED"); env != nullptr && *env != '\0') {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw holevo::InvalidArgument(std::string("HOLEVO_SEED is not an unsigned integer: ") + env);
    }
  }
  if (!flags.config_path.empty()) {
    const json j = holevo::io::read_json_file(flags.config_path);
    try {
      if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
      if (j.contains("dims")) cfg.dims = j["dims"].get<std::vector<std::size_t>>();
      if (j.contains("kraus")) cfg.kraus_counts = j["kraus"].get<std::vector<std::size_t>>();
      if (j.contains("instances")) cfg.instances = j["instances"].get<int>();
      if (j.contains("tol")) cfg.tolerance = j["tol"].get<double>();
      if (j.contains("checks")) {
        const auto c = j["checks"].get<std::vector<std::string>>();
        cfg.checks = {c.begin(), c.end()};
      }
      if (j.contains("gauge_trials")) cfg.gauge_trials = j["gauge_trials"].get<int>();
    } catch (const json::exception& e) {
      throw holevo::InvalidArgument(flags.config_path + ": " + e.what());
    }
  }
  if (flags.seed) cfg.seed = *flags.seed;
  if (!flags.dims.empty()) cfg.dims = flags.dims;
  if (!flags.kraus.empty()) cfg.kraus_counts = flags.kraus;
  if (flags.instances) cfg.instances = *flags.instances;
  if (flags.tol) cfg.tolerance = *flags.tol;
  if (!flags.checks.empty()) cfg.checks = {flags.checks.begin(), flags.checks.end()};
  if (const auto problem = cfg.validate(); !problem.empty()) throw holevo::InvalidArgument(problem);
  return cfg;
}

int cmd_verify(const VerifyFlags& flags) {
  holevo::CampaignConfig cfg;
  try {
    cfg = resolve_config(flags);
  } catch (const holevo::Error& e) {
    std::cerr << "verify: config error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::ofstream file;
  if (!flags.out_path.empty()) {
    file.open(flags.out_path);
    if (!file) {
      std::cerr << "verify: cannot write " << flags.out_path << '\n';
      return kExitUsage;
    }
  }
  std::ostream& out = flags.out_path.empty() ? std::cout : file;
  const auto summary = holevo::run_campaign(cfg, [&](const holevo::BoundLedger& ledger) {
    holevo::io::write_ledger_jsonl(out, ledger);
  });
  out.flush();
  char line[256];
  std::snprintf(line, sizeof line, "verify: instances=%zu entries=%zu violations=%zu min_slack=%.3e worst_violation=%.3e",
                summary.instances, summary.entries, summary.violations, summary.min_slack, summary.worst_violation);
  std::cerr << line << '\n';
  return summary.violations == 0 ? 0 : kExitViolations;
}

struct ComputeFlags {
  std::string what;
  std::vector<std::string> inputs;
  bool bits = false;
  double lambda = 0.5;
};

bool is_distribution_file(const json& j) { return j.contains("probs"); }

void print_value(double nats_or_plain, bool entropic, bool bits) {
  double v = entropic && bits ? holevo::to_bits(nats_or_plain) : nats_or_plain;
  if (std::abs(v) < 5e-10) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  std::cout << buf << '\n';
}

int cmd_compute(const ComputeFlags& f) {
  auto need = [&](std::size_t n) {
    if (f.inputs.size() != n) {
      std::ostringstream msg;
      msg << "'" << f.what << "' expects " << n << " input file(s), got " << f.inputs.size();
      throw holevo::InvalidArgument(msg.str());
    }
  };
  try {
    namespace io = holevo::io;
    const std::string& w = f.what;
    if (w == "entropy") {
      need(1);
      const json j = io::read_json_file(f.inputs[0]);
      const double s = is_distribution_file(j) ? holevo::shannon_entropy(io::distribution_from_json(j))
                                               : holevo::von_neumann_entropy(io::density_from_json(j));
      print_value(s, true, f.bits);
    } else if (w == "chi") {
      need(1);
      print_value(holevo::holevo_chi(io::ensemble_from_json(io::read_json_file(f.inputs[0]))), true, f.bits);
    } else if (w == "exchange" || w == "coherent") {
      need(2);
      const auto phi = io::channel_from_json(io::read_json_file(f.inputs[0]));
      const auto rho = io::density_from_json(io::read_json_file(f.inputs[1]));
      print_value(w == "exchange" ? holevo::exchange_entropy(phi, rho) : holevo::coherent_information(phi, rho), true,
                  f.bits);
    } else if (w == "map-entropy") {
      need(1);
      print_value(holevo::map_entropy(io::channel_from_json(io::read_json_file(f.inputs[0]))), true, f.bits);
    } else if (w == "qjsd" || w == "fidelity" || w == "de" || w == "dt") {
      need(2);
      const json a = io::read_json_file(f.inputs[0]);
      const json b = io::read_json_file(f.inputs[1]);
      if (is_distribution_file(a) != is_distribution_file(b)) {
        throw holevo::InvalidArgument("inputs must both be states or both be distributions");
      }
      if (is_distribution_file(a)) {
        const auto p = io::distribution_from_json(a), q = io::distribution_from_json(b);
        if (w == "qjsd") print_value(holevo::jensen_shannon(p, q, f.lambda), true, f.bits);
        if (w == "fidelity") print_value(holevo::bhattacharyya(p, q), false, f.bits);
        if (w == "de") print_value(holevo::entropic_distance_classical(p, q), false, f.bits);
        if (w == "dt") print_value(holevo::transmission_distance(p, q), false, f.bits);
      } else {
        const auto r1 = io::density_from_json(a), r2 = io::density_from_json(b);
        if (w == "qjsd") print_value(holevo::qjsd(r1, r2, f.lambda), true, f.bits);
        if (w == "fidelity") print_value(holevo::root_fidelity(r1, r2), false, f.bits);
        if (w == "de") print_value(holevo::entropic_distance(r1, r2), false, f.bits);
        if (w == "dt") print_value(holevo::transmission_distance_quantum(r1, r2), false, f.bits);
      }
    } else {
      throw holevo::InvalidArgument("unknown quantity '" + w + "'");
    }
  } catch (const holevo::Error& e) {
    std::cerr << "compute: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}

int cmd_figure2(const std::string& panel, int grid, const std::string& out_path) {
  std::vector<holevo::FigureRow> rows;
  try {
    if (panel.size() != 1) throw holevo::InvalidArgument("panel must be 'a' or 'b'");
    rows = holevo::figure2_rows(panel[0], grid);
  } catch (const holevo::Error& e) {
    std::cerr << "figure2: " << e.what() << '\n';
    return kExitUsage;
  }
  if (out_path.empty() || out_path == "-") {
    holevo::write_figure2_csv(std::cout, rows);
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "figure2: cannot write " << out_path << '\n';
    return kExitUsage;
  }
  holevo::write_figure2_csv(out, rows);
  out.flush();
  if (!out) {
    std::cerr << "figure2: write to " << out_path << " failed\n";
    return kExitUsage;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holevo quantity, exchange entropy and Jensen-Shannon bounds"};
  app.require_subcommand(1);

  VerifyFlags vf;
  auto* verify = app.add_subcommand("verify", "Run seeded certification campaigns; JSON-lines ledger on stdout");
  verify->add_option("--seed", vf.seed, "Campaign seed (default 42, or HOLEVO_SEED)");
  verify->add_option("--dims", vf.dims, "Hilbert-space dimensions (default 2,3,4)")->delimiter(',');
  verify->add_option("--kraus", vf.kraus, "Kraus counts cycled over instances (default 1,2,3,4,5)")->delimiter(',');
  verify->add_option("--instances", vf.instances, "Instances per dimension and check (default 200)");
  verify->add_option("--tol", vf.tol, "Inequality tolerance in nats (default 1e-8)");
  verify->add_option("--checks", vf.checks, "Subset of ssa,prop2,lindblad,coherent,entop,qjsd,metric (default all)")
      ->delimiter(',');
  verify->add_option("--config", vf.config_path, "JSON config file; flags override it");
  verify->add_option("--out", vf.out_path, "Write the ledger here instead of stdout");

  ComputeFlags cf;
  auto* compute = app.add_subcommand("compute", "Evaluate one quantity from JSON inputs");
  compute->add_option("what", cf.what, "entropy|chi|exchange|coherent|qjsd|fidelity|de|dt|map-entropy")->required();
  compute->add_option("inputs", cf.inputs, "Input files (state, ensemble, channel or distribution JSON)");
  compute->add_flag("--bits", cf.bits, "Report entropic values in bits instead of nats");
  compute->add_option("--lambda", cf.lambda, "Weight of the first state for qjsd (default 0.5)");

  std::string panel = "a";
  int grid = 200;
  std::string fig_out;
  auto* figure = app.add_subcommand("figure2", "Emit p,d_t,d_e CSV for binary distribution families");
  figure->add_option("--panel", panel, "a: Q=(1-p,p); b: Q=(1,0) (default a)");
  figure->add_option("--grid", grid, "Number of grid intervals (default 200)");
  figure->add_option("--out", fig_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*verify) return cmd_verify(vf);
  if (*compute) return cmd_compute(cf);
  return cmd_figure2(panel, grid, fig_out);
}
