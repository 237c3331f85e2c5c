#include "qlab/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "qlab/closed_forms.hpp"
#include "qlab/rng.hpp"

namespace qlab::cli {

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

double parse_real(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + " value '" + s + "'");
  }
  if (used != s.size()) {
    throw std::invalid_argument("trailing characters in " + what + " value '" + s + "'");
  }
  return v;
}

long long parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + " value '" + s + "'");
  }
  if (used != s.size()) {
    throw std::invalid_argument("trailing characters in " + what + " value '" + s + "'");
  }
  return v;
}

bool looks_like_path(const std::string& s) {
  return s.find('/') != std::string::npos ||
         (s.size() > 5 && s.substr(s.size() - 5) == ".json");
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
  json j;
  in >> j;
  return j;
}

// Rejects keys outside `allowed`; returns the value for `key` if present.
class SpecArgs {
 public:
  SpecArgs(const SpecString& spec, std::vector<std::string> allowed)
      : spec_(spec), allowed_(std::move(allowed)) {
    for (const auto& [k, v] : spec.args) {
      bool ok = false;
      for (const std::string& a : allowed_)
        if (k == a) ok = true;
      if (!ok) {
        throw std::invalid_argument("unknown key '" + (k.empty() ? "<positional>" : k) +
                                    "' for spec '" + spec.name + "'");
      }
    }
  }

  bool has(const std::string& key) const {
    for (const auto& [k, v] : spec_.args)
      if (k == key) return true;
    return false;
  }

  std::string get(const std::string& key) const {
    for (const auto& [k, v] : spec_.args)
      if (k == key) return v;
    throw std::invalid_argument("missing key '" + key + "' for spec '" + spec_.name + "'");
  }

 private:
  const SpecString& spec_;
  std::vector<std::string> allowed_;
};

PlatonicSolid solid_by_name(const std::string& name) {
  if (name == "tetrahedron") return PlatonicSolid::tetrahedron;
  if (name == "octahedron") return PlatonicSolid::octahedron;
  if (name == "cube") return PlatonicSolid::cube;
  if (name == "icosahedron") return PlatonicSolid::icosahedron;
  if (name == "dodecahedron") return PlatonicSolid::dodecahedron;
  throw std::invalid_argument("unknown platonic solid '" + name + "'");
}

std::vector<PureState> pauli_eigenbasis(const std::string& axis) {
  const double r = 1.0 / std::sqrt(2.0);
  if (axis == "z") return {PureState::basis(2, 0), PureState::basis(2, 1)};
  if (axis == "x") {
    return {PureState({cxd(r, 0), cxd(r, 0)}), PureState({cxd(r, 0), cxd(-r, 0)})};
  }
  if (axis == "y") {
    return {PureState({cxd(r, 0), cxd(0, r)}), PureState({cxd(r, 0), cxd(0, -r)})};
  }
  throw std::invalid_argument("unknown measurement axis '" + axis + "'");
}

// Unitaries mapping |0> to each ensemble state; with nucleus |0> the
// covariant constructor then reproduces the ensemble's own projectors.
std::vector<ComplexMatrix> state_rotations(const Ensemble& e) {
  std::vector<ComplexMatrix> rotations;
  for (int i = 0; i < e.size(); ++i) {
    const PureState& v = e.state(i);
    ComplexMatrix u(2);
    u(0, 0) = v.amplitude(0);
    u(1, 0) = v.amplitude(1);
    u(0, 1) = -std::conj(v.amplitude(1));
    u(1, 1) = std::conj(v.amplitude(0));
    rotations.push_back(std::move(u));
  }
  return rotations;
}

json cfg_to_json(const OptimizerConfig& cfg) {
  return {{"max_outcomes", cfg.max_outcomes}, {"restarts", cfg.restarts},
          {"max_iters", cfg.max_iters},       {"rel_tol", cfg.rel_tol},
          {"seed", cfg.seed},                 {"prior_min_grid", cfg.prior_min_grid}};
}

}  // namespace

json RunRecord::to_json() const {
  return {{"command", command},
          {"parameters", parameters},
          {"results", results},
          {"seed", seed},
          {"tool_version", tool_version},
          {"wall_time_ms", wall_time_ms}};
}

RunRecord RunRecord::from_json(const json& j) {
  RunRecord r;
  r.command = j.at("command").get<std::string>();
  r.parameters = j.at("parameters");
  r.results = j.at("results");
  r.seed = j.at("seed").get<std::uint64_t>();
  r.tool_version = j.at("tool_version").get<std::string>();
  r.wall_time_ms = j.at("wall_time_ms").get<std::int64_t>();
  return r;
}

SpecString parse_spec(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty spec string");
  SpecString out;
  const std::size_t colon = text.find(':');
  out.name = text.substr(0, colon);
  if (colon == std::string::npos) return out;
  std::string rest = text.substr(colon + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    std::size_t comma = rest.find(',', pos);
    if (comma == std::string::npos) comma = rest.size();
    const std::string token = rest.substr(pos, comma - pos);
    if (token.empty()) throw std::invalid_argument("empty token in spec '" + text + "'");
    const std::size_t eq = token.find('=');
    if (eq == std::string::npos) {
      out.args.emplace_back("", token);
    } else {
      out.args.emplace_back(token.substr(0, eq), token.substr(eq + 1));
    }
    pos = comma + 1;
    if (comma == rest.size()) break;
  }
  return out;
}

Ensemble build_ensemble(const std::string& spec, std::uint64_t default_seed) {
  if (looks_like_path(spec)) return ensemble_from_json(load_json_file(spec));
  const SpecString s = parse_spec(spec);
  if (s.name == "twostate") {
    SpecArgs args(s, {"theta", "P"});
    const double theta = parse_real(args.get("theta"), "theta");
    const double skew = args.has("P") ? parse_real(args.get("P"), "P") : 0.0;
    return two_state(theta, skew);
  }
  if (s.name == "realsym") {
    SpecArgs args(s, {"M"});
    return real_symmetric(static_cast<int>(parse_int(args.get("M"), "M")));
  }
  if (s.name == "platonic") {
    SpecArgs args(s, {"", "solid"});
    const std::string name = args.has("solid") ? args.get("solid") : args.get("");
    return platonic(solid_by_name(name));
  }
  if (s.name == "trine") {
    SpecArgs args(s, {"alpha"});
    return lifted_trine(parse_real(args.get("alpha"), "alpha"));
  }
  if (s.name == "sic") {
    SpecArgs args(s, {"d"});
    return sic_ensemble(static_cast<int>(parse_int(args.get("d"), "d")));
  }
  if (s.name == "haar") {
    SpecArgs args(s, {"d", "n", "seed"});
    const std::uint64_t seed =
        args.has("seed") ? static_cast<std::uint64_t>(parse_int(args.get("seed"), "seed"))
                         : default_seed;
    return haar_sample(static_cast<int>(parse_int(args.get("d"), "d")),
                       static_cast<int>(parse_int(args.get("n"), "n")), seed);
  }
  throw std::invalid_argument("unknown ensemble spec '" + spec + "'");
}

Povm build_povm(const std::string& spec, const Ensemble& context,
                const std::string& ensemble_spec, std::uint64_t default_seed) {
  if (looks_like_path(spec)) {
    const json j = load_json_file(spec);
    const json& doc = j.contains("best_povm") ? j.at("best_povm") : j;
    Povm p = povm_from_json(doc);
    if (p.dim() != context.dim()) {
      throw std::invalid_argument("povm dimension " + std::to_string(p.dim()) +
                                  " does not match ensemble dimension " +
                                  std::to_string(context.dim()));
    }
    return p;
  }
  const SpecString s = parse_spec(spec);
  if (s.name == "identity") {
    SpecArgs args(s, {});
    return identity_povm(context.dim());
  }
  if (s.name == "vn") {
    SpecArgs args(s, {"", "seed"});
    if (args.has("seed")) {
      Rng rng(static_cast<std::uint64_t>(parse_int(args.get("seed"), "seed")));
      return random_von_neumann(context.dim(), rng);
    }
    if (args.has("")) {
      if (context.dim() != 2) {
        throw std::invalid_argument("vn axis shorthand needs a qubit ensemble");
      }
      return von_neumann(pauli_eigenbasis(args.get("")));
    }
    std::vector<PureState> basis;
    for (int i = 0; i < context.dim(); ++i) basis.push_back(PureState::basis(context.dim(), i));
    return von_neumann(basis);
  }
  if (s.name == "helstrom") {
    SpecArgs args(s, {});
    return helstrom(context);
  }
  if (s.name == "srm") {
    SpecArgs args(s, {});
    return srm(context);
  }
  if (s.name == "shor") {
    SpecArgs args(s, {"alpha"});
    double alpha;
    if (args.has("alpha")) {
      alpha = parse_real(args.get("alpha"), "alpha");
    } else {
      const SpecString es = parse_spec(ensemble_spec);
      if (es.name != "trine") {
        throw std::invalid_argument("shor povm needs alpha=... or a trine ensemble");
      }
      SpecArgs eargs(es, {"alpha"});
      alpha = parse_real(eargs.get("alpha"), "alpha");
    }
    return shor_trine(alpha);
  }
  if (s.name == "sic") {
    SpecArgs args(s, {"d"});
    const int d = args.has("d") ? static_cast<int>(parse_int(args.get("d"), "d"))
                                : context.dim();
    if (d != context.dim()) {
      throw std::invalid_argument("sic povm dimension mismatch with ensemble");
    }
    return sic_povm(d);
  }
  if (s.name == "covariant") {
    SpecArgs args(s, {});
    if (context.dim() != 2) {
      throw std::invalid_argument("covariant povm is defined for qubit ensembles");
    }
    return group_covariant(PureState::basis(2, 0), state_rotations(context));
  }
  (void)default_seed;
  throw std::invalid_argument("unknown povm spec '" + spec + "'");
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

RunRecord cmd_eval(const std::string& ensemble_spec, const std::string& povm_spec,
                   std::uint64_t seed) {
  Stopwatch watch;
  const Ensemble e = build_ensemble(ensemble_spec, seed);
  const Povm p = build_povm(povm_spec, e, ensemble_spec, seed);
  const HermitianOperator rho = density_operator(e);

  RunRecord rec;
  rec.command = "eval";
  rec.seed = seed;
  rec.parameters = {{"ensemble", ensemble_spec}, {"povm", povm_spec}};
  rec.results["achievable_fidelity"] = achievable_fidelity(e, p);
  rec.results["success_probability"] = success_probability(e, p);
  rec.results["lambda_max_bound"] = lambda_max_bound(e);
  rec.results["srm_lower_bound"] = srm_lower_bound(e);
  const PovmDiagnostics diag = p.validate();
  rec.results["povm_diagnostics"] = {{"min_eigenvalue", diag.min_eigenvalue},
                                     {"completeness_residual", diag.completeness_residual}};
  json probs = json::array();
  json posts = json::array();
  for (int b = 0; b < p.size(); ++b) {
    const double pb = trace_product(rho, p.element(b));
    probs.push_back(pb);
    if (pb < 1e-15) {
      posts.push_back(nullptr);  // zero-probability outcome, posterior undefined
    } else {
      posts.push_back(posterior(e, p, b));
    }
  }
  rec.results["outcome_probabilities"] = probs;
  rec.results["posteriors"] = posts;
  rec.wall_time_ms = watch.elapsed_ms();
  return rec;
}

RunRecord cmd_optimize(const std::string& ensemble_spec, const OptimizerConfig& cfg) {
  Stopwatch watch;
  const Ensemble e = build_ensemble(ensemble_spec, cfg.seed);
  const OptimizationReport report = accessible_fidelity(e, cfg);

  RunRecord rec;
  rec.command = "optimize";
  rec.seed = cfg.seed;
  rec.parameters = {{"ensemble", ensemble_spec}, {"config", cfg_to_json(cfg)}};
  rec.results["best_value"] = report.best_value;
  rec.results["converged"] = report.converged;
  rec.results["lambda_max_bound"] = lambda_max_bound(e);
  rec.results["srm_lower_bound"] = srm_lower_bound(e);
  rec.results["report"] = report_to_json(report);
  rec.wall_time_ms = watch.elapsed_ms();
  return rec;
}

RunRecord cmd_quantumness(const std::string& states_spec, const OptimizerConfig& cfg) {
  Stopwatch watch;
  const Ensemble base = build_ensemble(states_spec, cfg.seed);
  const QuantumnessResult q = quantumness(base.states(), cfg);

  RunRecord rec;
  rec.command = "quantumness";
  rec.seed = cfg.seed;
  rec.parameters = {{"states", states_spec}, {"config", cfg_to_json(cfg)}};
  rec.results["value"] = q.value;
  rec.results["worst_priors"] = q.worst_priors;
  rec.results["report"] = report_to_json(q.report);
  rec.wall_time_ms = watch.elapsed_ms();
  return rec;
}

RunRecord cmd_scan(const std::string& quantity, double lo, double hi, int steps,
                   const std::string& csv_path, std::uint64_t seed) {
  Stopwatch watch;
  if (steps < 2) throw std::invalid_argument("scan needs at least 2 grid points");
  if (!(hi > lo)) throw std::invalid_argument("scan needs hi > lo");

  std::function<double(double)> f;
  std::string var;
  RunRecord rec;
  rec.command = "scan";
  rec.seed = seed;
  if (quantity == "t_two_state") {
    f = figure_of_merit_two_state;
    var = "x";
  } else if (quantity == "t_trine") {
    f = figure_of_merit_trine;
    var = "alpha";
    rec.results["note"] =
        "assumes the square-root-measurement fidelity stands in for the trine quantumness";
  } else if (quantity == "srm_trine") {
    f = trine_srm;
    var = "alpha";
  } else if (quantity == "q_two_state") {
    f = two_state_quantumness;
    var = "x";
  } else {
    throw std::invalid_argument("unknown scan quantity '" + quantity + "'");
  }
  rec.parameters = {{"quantity", quantity}, {"lo", lo},
                    {"hi", hi},             {"steps", steps},
                    {"csv", csv_path}};

  json values = json::array();
  std::string csv = var + ",value\n";
  for (int i = 0; i < steps; ++i) {
    const double x = lo + (hi - lo) * i / (steps - 1);
    const double v = f(x);
    values.push_back({x, v});
    csv += format_real(x) + "," + format_real(v) + "\n";
  }
  rec.results["values"] = values;

  if (quantity == "t_two_state" || quantity == "t_trine") {
    const ScalarOptimum m = scalar_maximize(f, lo, hi);
    rec.results["argmax"] = m.arg;
    rec.results["max"] = m.value;
    if (quantity == "t_trine") {
      rec.results["angle_deg"] = std::acos((3.0 * m.arg - 1.0) / 2.0) * 180.0 / kPi;
    }
  } else if (quantity == "srm_trine") {
    const ScalarOptimum g = scalar_minimize(f, lo, hi);
    rec.results["argmin"] = g.arg;
    rec.results["min"] = g.value;
    const double rlo = std::max(lo, 1.0 / 3.0);
    if (hi > rlo) {
      const ScalarOptimum r = scalar_minimize(f, rlo, hi);
      rec.results["restricted_argmin"] = r.arg;
      rec.results["restricted_min"] = r.value;
      rec.results["restricted_angle_deg"] =
          std::acos((3.0 * r.arg - 1.0) / 2.0) * 180.0 / kPi;
    }
  } else {
    const ScalarOptimum g = scalar_minimize(f, lo, hi);
    rec.results["argmin"] = g.arg;
    rec.results["min"] = g.value;
  }

  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw std::invalid_argument("cannot write CSV to '" + csv_path + "'");
    out << csv;
  }
  rec.wall_time_ms = watch.elapsed_ms();
  return rec;
}

RunRecord cmd_table(std::uint64_t seed) {
  Stopwatch watch;
  RunRecord rec;
  rec.command = "table";
  rec.seed = seed;
  rec.parameters = json::object();
  json rows = json::array();
  bool all_pass = true;
  const auto push = [&](const std::string& name, json values, bool pass) {
    rows.push_back({{"name", name}, {"values", std::move(values)}, {"pass", pass}});
    all_pass = all_pass && pass;
  };

  {
    // Fixed-measurement fidelity formula against the explicit strategy.
    const Ensemble e = two_state(1.1, 0.3);
    const Povm p = helstrom(e);
    const double formula = achievable_fidelity(e, p);
    const double strategy = average_fidelity(e, optimal_resynthesis(e, p));
    push("achievable-fidelity-formula",
         {{"formula", formula}, {"strategy", strategy}},
         std::abs(formula - strategy) <= 1e-10);
  }
  {
    // Bound instances: success <= fidelity, lambda_1(rho) floor, SRM bound.
    const Ensemble e = two_state(1.1, 0.3);
    const Povm ps = srm(e);
    const double f_srm_povm = achievable_fidelity(e, ps);
    const double p_s = success_probability(e, ps);
    const double lam = lambda_max_bound(e);
    const double f_srm = srm_lower_bound(e);
    const double f_best = achievable_fidelity(e, helstrom(e));
    const double f_id = achievable_fidelity(e, identity_povm(2));
    const bool pass = p_s <= f_srm_povm + 1e-12 && lam <= f_srm_povm + 1e-12 &&
                      f_srm <= f_best + 1e-12 && std::abs(f_id - lam) <= 1e-12;
    push("fidelity-bounds",
         {{"success_probability", p_s},
          {"fidelity_srm_povm", f_srm_povm},
          {"lambda_max_bound", lam},
          {"srm_lower_bound", f_srm},
          {"fidelity_helstrom", f_best},
          {"fidelity_identity", f_id}},
         pass);
  }
  {
    // Binary source closed forms at theta = pi/4.
    const double theta = kPi / 4.0;
    const double accessible = two_state_accessible(theta, 0.0);
    const double q = two_state_quantumness(std::cos(theta));
    const Ensemble e = two_state(theta, 0.0);
    const double live = achievable_fidelity(e, helstrom(e));
    push("two-state-closed-forms",
         {{"accessible", accessible}, {"quantumness", q}, {"helstrom_fidelity", live}},
         std::abs(accessible - q) <= 1e-12 && std::abs(accessible - live) <= 1e-10);
  }
  {
    // Every real rank-1 measurement extracts 3/4 from the symmetric source.
    bool pass = true;
    double worst = 0.0;
    Rng rng(seed ^ 0x7ab1e5ull);
    for (int m : {3, 4, 5, 8}) {
      const Ensemble e = real_symmetric(m);
      for (int k = 0; k < 4; ++k) {
        Povm p = random_rank1_povm(2, 3, rng, /*real_amplitudes=*/true);
        worst = std::max(worst, std::abs(achievable_fidelity(e, p) - 0.75));
      }
    }
    pass = worst <= 1e-9;
    push("real-symmetric-source", {{"fidelity", 0.75}, {"worst_deviation", worst}}, pass);
  }
  {
    // All five vertex ensembles reach 2/3 with their covariant measurement
    // and with an arbitrary basis measurement.
    bool pass = true;
    json vals = json::object();
    Rng rng(seed ^ 0x50C1A1ull);
    for (PlatonicSolid solid :
         {PlatonicSolid::tetrahedron, PlatonicSolid::octahedron, PlatonicSolid::cube,
          PlatonicSolid::icosahedron, PlatonicSolid::dodecahedron}) {
      const Ensemble e = platonic(solid);
      const Povm cov = group_covariant(PureState::basis(2, 0), platonic_rotations(solid));
      const double fc = achievable_fidelity(e, cov);
      const double fv = achievable_fidelity(e, random_von_neumann(2, rng));
      pass = pass && std::abs(fc - 2.0 / 3.0) <= 1e-9 && std::abs(fv - 2.0 / 3.0) <= 1e-9;
      vals[std::to_string(e.size()) + "-vertices"] = fc;
    }
    push("platonic-solids", vals, pass);
  }
  {
    // Uniform-ensemble values over the three scalar fields.
    bool pass = true;
    json vals = json::array();
    for (int d = 2; d <= 5; ++d) {
      const double fr = uniform_fidelity(d, 1);
      const double fc = uniform_fidelity(d, 2);
      const double fq = uniform_fidelity(d, 4);
      pass = pass && std::abs(fr - 3.0 / (d + 2)) <= 1e-12 &&
             std::abs(fc - 2.0 / (d + 1)) <= 1e-12 &&
             std::abs(fq - 3.0 / (2.0 * d + 1)) <= 1e-12;
      vals.push_back({{"d", d}, {"real", fr}, {"complex", fc}, {"quaternionic", fq}});
    }
    push("uniform-ensembles", vals, pass);
  }
  {
    // Lifted trines at alpha = 1/40: SRM bound two ways plus the six-outcome
    // measurement value.
    const double alpha = 1.0 / 40.0;
    const double closed = trine_srm(alpha);
    const double numeric = srm_lower_bound(lifted_trine(alpha));
    const double f_shor = achievable_fidelity(lifted_trine(alpha), shor_trine(alpha));
    const bool pass = std::abs(closed - numeric) <= 1e-10 &&
                      std::abs(closed - 0.84766) <= 1e-5 &&
                      std::abs(f_shor - 0.79999) <= 2e-4;
    push("lifted-trine-srm",
         {{"srm_closed_form", closed}, {"srm_numeric", numeric}, {"shor_fidelity", f_shor}},
         pass);
  }

  rec.results["rows"] = rows;
  rec.results["all_pass"] = all_pass;
  rec.wall_time_ms = watch.elapsed_ms();
  return rec;
}

RunRecord cmd_haar_mc(int d, int n, std::uint64_t seed, const std::string& povm_spec) {
  Stopwatch watch;
  const Ensemble e = haar_sample(d, n, seed);
  const Povm p = build_povm(povm_spec, e, "haar", seed);

  // Fixed strategy: each outcome resynthesizes the top ray of its own
  // element (the asymptotically optimal assignment for the uniform source).
  std::vector<PureState> phis;
  for (int b = 0; b < p.size(); ++b) phis.push_back(lambda_max(p.element(b)).vector);

  // Per-state fidelity contributions are i.i.d., so the sample mean carries
  // a standard error.
  double sum = 0.0;
  double sum2 = 0.0;
  for (int i = 0; i < e.size(); ++i) {
    double fi = 0.0;
    for (int b = 0; b < p.size(); ++b) {
      const double o = overlap(phis[static_cast<std::size_t>(b)], e.state(i));
      fi += p.element(b).expectation(e.state(i)) * o * o;
    }
    sum += fi;
    sum2 += fi * fi;
  }
  const double mean = sum / n;
  const double var = std::max(0.0, (sum2 - n * mean * mean) / (n - 1.0));
  const double se = std::sqrt(var / n);
  const double reference = uniform_fidelity(d, 2);

  RunRecord rec;
  rec.command = "haar-mc";
  rec.seed = seed;
  rec.parameters = {{"d", d}, {"n", n}, {"povm", povm_spec}};
  rec.results["average_fidelity"] = mean;
  rec.results["std_error"] = se;
  rec.results["reference"] = reference;
  rec.results["within_three_sigma"] = std::abs(mean - reference) <= 3.0 * se;
  rec.results["achievable_fidelity"] = achievable_fidelity(e, p);
  rec.wall_time_ms = watch.elapsed_ms();
  return rec;
}

}  // namespace qlab::cli
