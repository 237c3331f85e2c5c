#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qlab/optimizer.hpp"
#include "qlab/serialize.hpp"

namespace qlab::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// One executed command with its inputs and named outputs. Round-trips
// through JSON losslessly.
struct RunRecord {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::int64_t wall_time_ms = 0;

  nlohmann::json to_json() const;
  static RunRecord from_json(const nlohmann::json& j);
  bool operator==(const RunRecord&) const = default;
};

// Mini-grammar `name[:key=value,...]`. A token without '=' is positional
// shorthand, e.g. `platonic:cube` or `vn:z`. Builders reject unknown keys.
struct SpecString {
  std::string name;
  std::vector<std::pair<std::string, std::string>> args;
};
SpecString parse_spec(const std::string& text);

// Built-ins: twostate:theta=R[,P=R]; realsym:M=N; platonic:<solid>;
// trine:alpha=R; sic:d=N; haar:d=N,n=N[,seed=N]; or a path to an ensemble
// JSON document.
Ensemble build_ensemble(const std::string& spec, std::uint64_t default_seed);

// Built-ins, interpreted against the ensemble they will measure: identity;
// vn[:x|y|z][,seed=N]; helstrom; srm; shor[:alpha=R] (alpha defaults to the
// trine ensemble's); sic; covariant; or a path to a povm JSON document (an
// optimizer report replays its best_povm).
Povm build_povm(const std::string& spec, const Ensemble& context,
                const std::string& ensemble_spec, std::uint64_t default_seed);

// 12 significant digits, C locale, '.' decimal separator.
std::string format_real(double v);

RunRecord cmd_eval(const std::string& ensemble_spec, const std::string& povm_spec,
                   std::uint64_t seed);
RunRecord cmd_optimize(const std::string& ensemble_spec, const OptimizerConfig& cfg);
// Quantumness of the state set named by the spec; its priors are ignored.
RunRecord cmd_quantumness(const std::string& states_spec, const OptimizerConfig& cfg);
// quantity: t_two_state | t_trine | srm_trine | q_two_state. Writes the grid
// as CSV when csv_path is nonempty and always embeds it in the record.
RunRecord cmd_scan(const std::string& quantity, double lo, double hi, int steps,
                   const std::string& csv_path, std::uint64_t seed);
// Recomputes the headline values (closed forms against live evaluations);
// results.all_pass reports the verdict.
RunRecord cmd_table(std::uint64_t seed);
// Monte Carlo average fidelity of a fixed measurement on a Haar sample.
RunRecord cmd_haar_mc(int d, int n, std::uint64_t seed, const std::string& povm_spec);

}  // namespace qlab::cli
