#pragma once

// JSON file formats:
//   matrix        {"dim": d, "re": [[...]], "im": [[...]]}   ("im" optional)
//   distribution  {"probs": [...]}
//   ensemble      {"weights": [...], "states": [matrix, ...]}
//   channel       {"dim": d, "kraus": [matrix, ...]}
//   ledger line   {"name", "lhs", "rhs", "slack", "pass", "instance"}

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "holevo/bounds.hpp"
#include "holevo/channels.hpp"
#include "holevo/states.hpp"

namespace holevo::io {

using json = nlohmann::json;

/// Malformed or invalid input file; the message names the violated rule.
class ParseError : public Error {
 public:
  using Error::Error;
};

inline Matrix matrix_from_json(const json& j) {
  try {
    const std::size_t d = j.at("dim").get<std::size_t>();
    const auto& re = j.at("re");
    const bool has_im = j.contains("im");
    if (d == 0) throw ParseError("matrix: dim must be positive");
    if (!re.is_array() || re.size() != d) throw ParseError("matrix: \"re\" must have dim rows");
    if (has_im && (!j["im"].is_array() || j["im"].size() != d)) throw ParseError("matrix: \"im\" must have dim rows");
    std::vector<complex> entries;
    entries.reserve(d * d);
    for (std::size_t r = 0; r < d; ++r) {
      if (!re[r].is_array() || re[r].size() != d) throw ParseError("matrix: every \"re\" row must have dim entries");
      if (has_im && (!j["im"][r].is_array() || j["im"][r].size() != d)) {
        throw ParseError("matrix: every \"im\" row must have dim entries");
      }
      for (std::size_t c = 0; c < d; ++c) {
        const double x = re[r][c].get<double>();
        const double y = has_im ? j["im"][r][c].get<double>() : 0.0;
        entries.emplace_back(x, y);
      }
    }
    return Matrix(d, d, std::move(entries));
  } catch (const json::exception& e) {
    throw ParseError(std::string("matrix: ") + e.what());
  }
}

inline json matrix_to_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ir = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return {{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline DensityMatrix density_from_json(const json& j) {
  try {
    return DensityMatrix(matrix_from_json(j));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("state: ") + e.what());
  }
}

inline ClassicalDistribution distribution_from_json(const json& j) {
  try {
    return ClassicalDistribution(j.at("probs").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("distribution: ") + e.what());
  } catch (const Error& e) {
    throw ParseError(std::string("distribution: ") + e.what());
  }
}

inline json distribution_to_json(const ClassicalDistribution& p) { return {{"probs", p.probs()}}; }

inline Ensemble ensemble_from_json(const json& j) {
  try {
    ClassicalDistribution w(j.at("weights").get<std::vector<double>>());
    std::vector<DensityMatrix> states;
    for (const auto& s : j.at("states")) states.push_back(density_from_json(s));
    return Ensemble(std::move(w), std::move(states));
  } catch (const ParseError& e) {
    throw ParseError(std::string("ensemble: ") + e.what());
  } catch (const json::exception& e) {
    throw ParseError(std::string("ensemble: ") + e.what());
  } catch (const Error& e) {
    throw ParseError(std::string("ensemble: ") + e.what());
  }
}

inline json ensemble_to_json(const Ensemble& e) {
  json states = json::array();
  for (const auto& s : e.states()) states.push_back(matrix_to_json(s.matrix()));
  return {{"weights", e.weights().probs()}, {"states", std::move(states)}};
}

/// Loads a channel; an identity-resolution failure reports the residual norm.
inline KrausChannel channel_from_json(const json& j) {
  try {
    const std::size_t d = j.at("dim").get<std::size_t>();
    std::vector<Matrix> ops;
    for (const auto& k : j.at("kraus")) {
      ops.push_back(matrix_from_json(k));
      if (ops.back().rows() != d) throw ParseError("Kraus operator dimension differs from \"dim\"");
    }
    if (ops.empty()) throw ParseError("\"kraus\" must be non-empty");
    const double residual = identity_resolution_residual(ops);
    if (!(residual <= kIdentityResolutionTol)) {
      std::ostringstream msg;
      msg << "identity resolution violated: max |sum K^dagger K - 1| = " << residual;
      throw ParseError(msg.str());
    }
    return KrausChannel(std::move(ops));
  } catch (const ParseError& e) {
    throw ParseError(std::string("channel: ") + e.what());
  } catch (const json::exception& e) {
    throw ParseError(std::string("channel: ") + e.what());
  } catch (const Error& e) {
    throw ParseError(std::string("channel: ") + e.what());
  }
}

inline json channel_to_json(const KrausChannel& phi) {
  json ops = json::array();
  for (const auto& k : phi.kraus()) ops.push_back(matrix_to_json(k));
  return {{"dim", phi.dim()}, {"kraus", std::move(ops)}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline json ledger_entry_to_json(const LedgerEntry& e) {
  return {{"name", e.name}, {"lhs", e.lhs}, {"rhs", e.rhs}, {"slack", e.slack}, {"pass", e.pass}, {"instance", e.instance}};
}

/// One JSON object per line.
inline void write_ledger_jsonl(std::ostream& out, const BoundLedger& ledger) {
  for (const auto& e : ledger.entries()) out << ledger_entry_to_json(e).dump() << '\n';
}

}  // namespace holevo::io
