#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qlab/closed_forms.hpp"
#include "qlab/optimizer.hpp"
#include "qlab/serialize.hpp"

using namespace qlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

Ensemble random_qubit_ensemble(int n, Rng& rng, bool real_amplitudes) {
  std::vector<WeightedState> items;
  double total = 0.0;
  std::vector<double> priors;
  for (int i = 0; i < n; ++i) {
    priors.push_back(rng.uniform(0.1, 1.0));
    total += priors.back();
  }
  for (int i = 0; i < n; ++i) {
    std::vector<cxd> v(2);
    for (cxd& z : v) z = real_amplitudes ? cxd(rng.gauss(), 0.0) : rng.gauss_complex();
    items.push_back({priors[static_cast<std::size_t>(i)] / total,
                     PureState::normalized(std::move(v))});
  }
  return Ensemble(2, std::move(items));
}

// Best two-outcome projective measurement over a dense angle grid in the
// real plane; a lower bound on the accessible fidelity.
double projective_grid_best(const Ensemble& e, int angles) {
  double best = 0.0;
  for (int k = 0; k < angles; ++k) {
    const double a = kPi * k / angles;
    const PureState v({cxd(std::cos(a), 0.0), cxd(std::sin(a), 0.0)});
    const PureState u({cxd(-std::sin(a), 0.0), cxd(std::cos(a), 0.0)});
    best = std::max(best, achievable_fidelity(e, von_neumann({v, u})));
  }
  return best;
}

OptimizerConfig quick_cfg(std::uint64_t seed, int restarts = 12) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("two-state ensembles match the closed form") {
  Rng rng(2001);
  for (int k = 0; k < 6; ++k) {
    const double theta = rng.uniform(0.15, kPi - 0.15);
    const double skew = rng.uniform(0.0, 0.9);
    const Ensemble e = two_state(theta, skew);
    const OptimizationReport rep = accessible_fidelity(e, quick_cfg(k));
    CHECK(std::abs(rep.best_value - two_state_accessible(theta, skew)) <= 1e-6);
  }
}

TEST_CASE("symmetric sources reach their known optima") {
  const OptimizationReport sym = accessible_fidelity(real_symmetric(5), quick_cfg(5));
  CHECK(std::abs(sym.best_value - 0.75) <= 1e-7);

  const OptimizationReport ico =
      accessible_fidelity(platonic(PlatonicSolid::icosahedron), quick_cfg(6));
  CHECK(std::abs(ico.best_value - 2.0 / 3.0) <= 1e-7);
}

TEST_CASE("report invariants and determinism") {
  const Ensemble e = two_state(1.1, 0.35);
  const OptimizerConfig cfg = quick_cfg(17);
  const OptimizationReport a = accessible_fidelity(e, cfg);
  const OptimizationReport b = accessible_fidelity(e, cfg);

  // Bit-identical reports for identical inputs.
  CHECK(a.best_value == b.best_value);
  REQUIRE(a.per_restart_values.size() == b.per_restart_values.size());
  for (std::size_t i = 0; i < a.per_restart_values.size(); ++i) {
    CHECK(a.per_restart_values[i] == b.per_restart_values[i]);
    CHECK(a.iterations_used[i] == b.iterations_used[i]);
  }
  REQUIRE(a.best_povm.size() == b.best_povm.size());
  for (int i = 0; i < a.best_povm.size(); ++i) {
    CHECK((a.best_povm.element(i) - b.best_povm.element(i)).matrix().max_abs() == 0.0);
  }

  // best_value is the max over restarts and matches its own POVM.
  double top = 0.0;
  for (double v : a.per_restart_values) top = std::max(top, v);
  CHECK(a.best_value == top);
  CHECK(std::abs(a.best_value - achievable_fidelity(e, a.best_povm)) <= 1e-9);
  CHECK(a.converged);

  const PovmDiagnostics diag = a.best_povm.validate();
  CHECK(diag.min_eigenvalue >= -1e-9);
  CHECK(diag.completeness_residual <= 1e-9);

  // Strategy consistency.
  CHECK(std::abs(average_fidelity(e, a.best_strategy) - a.best_value) <= 1e-9);
}

TEST_CASE("ordering chain on assorted ensembles") {
  Rng rng(37);
  std::vector<Ensemble> ensembles = {
      two_state(kPi / 4.0, 0.0),   two_state(1.1, 0.35),
      real_symmetric(3),           real_symmetric(8),
      platonic(PlatonicSolid::tetrahedron),
      platonic(PlatonicSolid::dodecahedron),
      lifted_trine(0.025),         lifted_trine(0.6),
      sic_ensemble(2),             sic_ensemble(3),
      haar_sample(2, 6, 11),       haar_sample(3, 5, 12)};
  for (const Ensemble& e : ensembles) {
    const double lam = lambda_max_bound(e);
    const double srm_f = srm_lower_bound(e);
    const OptimizationReport rep = accessible_fidelity(e, quick_cfg(1, 8));
    CHECK(lam <= srm_f + 1e-9);
    CHECK(srm_f <= rep.best_value + 1e-9);
    CHECK(rep.best_value <= 1.0 + 1e-9);
    CHECK(success_probability(e, rep.best_povm) <= rep.best_value + 1e-9);
  }
}

TEST_CASE("projective grid lower-bounds the optimizer at d = 2") {
  Rng rng(404);
  for (int trial = 0; trial < 4; ++trial) {
    const int n = 2 + trial % 2;
    const bool real = trial < 2;
    const Ensemble e = random_qubit_ensemble(n, rng, real);
    const double grid = projective_grid_best(e, 4096);
    const OptimizationReport rep = accessible_fidelity(e, quick_cfg(trial, 8));
    CHECK(rep.best_value >= grid - 1e-6);
    if (real && n == 2) {
      // For two real states the optimum is projective and in-plane, so the
      // grid is tight up to its resolution.
      CHECK(rep.best_value <= grid + 1e-4);
    }
  }
}

TEST_CASE("quantumness of two states") {
  // Orthogonal pair: everything is classical.
  {
    const auto [value, priors, report] =
        quantumness({PureState::basis(2, 0), PureState::basis(2, 1)}, quick_cfg(3, 6));
    CHECK(value == doctest::Approx(1.0).epsilon(1e-9));
  }

  // Identical states: resending the known state is perfect.
  {
    const PureState s = PureState::normalized({cxd(0.8, 0.0), cxd(0.0, 0.6)});
    const auto [value, priors, report] = quantumness({s, s}, quick_cfg(4, 6));
    CHECK(value == doctest::Approx(1.0).epsilon(1e-9));
  }

  // Overlap 1/sqrt(2): the most quantum pair.
  {
    const Ensemble e = two_state(kPi / 4.0, 0.0);
    OptimizerConfig cfg = quick_cfg(5, 10);
    cfg.rel_tol = 1e-12;
    const auto [value, priors, report] = quantumness(e.states(), cfg);
    CHECK(std::abs(value - 0.9330127) <= 1e-4);
    CHECK(std::abs(priors[0] - 0.5) <= 1e-3);
    CHECK(std::abs(priors[1] - 0.5) <= 1e-3);
    CHECK(std::abs(report.best_value - value) <= 1e-12);
  }

  // x = 0.9 evaluates the closed form.
  {
    const double x = 0.9;
    const Ensemble e = two_state(std::acos(x), 0.0);
    OptimizerConfig cfg = quick_cfg(6, 10);
    cfg.rel_tol = 1e-12;
    const auto [value, priors, report] = quantumness(e.states(), cfg);
    CHECK(std::abs(value - two_state_quantumness(x)) <= 1e-5);
  }
}

TEST_CASE("sic candidate values") {
  CHECK(std::abs(sic_candidate_value(2) - 2.0 / 3.0) <= 1e-10);
  CHECK(std::abs(sic_candidate_value(3) - 0.5) <= 1e-10);
}

TEST_CASE("srm alpha scan") {
  std::vector<double> grid;
  for (int k = 0; k <= 40; ++k) grid.push_back(k / 40.0);
  const auto scan = srm_alpha_scan(grid);
  REQUIRE(scan.size() == grid.size());

  double best = 2.0;
  double best_alpha = -1.0;
  for (const auto& [alpha, value] : scan) {
    CHECK(std::abs(value - trine_srm(alpha)) <= 1e-10);
    if (value < best) {
      best = value;
      best_alpha = alpha;
    }
  }
  CHECK(best_alpha == 0.0);
  CHECK(best == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(trine_srm(0.0) == 0.75);  // the closed form is exact there

  // Three identical states resynthesize exactly.
  CHECK(scan.back().second == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("report replays through JSON") {
  const Ensemble e = lifted_trine(0.3);
  const OptimizationReport rep = accessible_fidelity(e, quick_cfg(9, 6));
  const nlohmann::json doc = report_to_json(rep);
  const Povm replay = povm_from_json(doc.at("best_povm"));
  CHECK(std::abs(achievable_fidelity(e, replay) - rep.best_value) <= 1e-12);
  CHECK(doc.at("seed").get<std::uint64_t>() == 9);
}

TEST_CASE("configuration validation") {
  OptimizerConfig bad;
  bad.restarts = 0;
  CHECK_THROWS_AS(accessible_fidelity(real_symmetric(3), bad), std::invalid_argument);
  bad = OptimizerConfig{};
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(accessible_fidelity(real_symmetric(3), bad), std::invalid_argument);
  CHECK_THROWS_AS(quantumness({PureState::basis(2, 0)}, OptimizerConfig{}),
                  std::invalid_argument);
}
