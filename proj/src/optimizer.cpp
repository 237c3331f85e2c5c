#include "qlab/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "qlab/closed_forms.hpp"
#include "qlab/rng.hpp"

namespace qlab {

namespace {

struct RestartOutcome {
  double value = 0.0;
  std::vector<HermitianOperator> elements;
  int iterations = 0;
  bool hit_tol = false;
};

std::vector<HermitianOperator> random_seeds(const Ensemble& e, int outcomes, Rng& rng) {
  std::vector<HermitianOperator> seeds;
  seeds.reserve(static_cast<std::size_t>(outcomes));
  for (int b = 0; b < outcomes; ++b) {
    std::vector<cxd> v(static_cast<std::size_t>(e.dim()));
    for (cxd& z : v) z = rng.gauss_complex();
    seeds.push_back(rng.uniform(0.2, 1.0) * projector(PureState::normalized(std::move(v))));
  }
  return seeds;
}

// One alternating-ascent run from the given seed operators. Monotonicity is
// not guaranteed per step, so the best iterate seen is kept.
RestartOutcome run_seesaw(const Ensemble& e, std::vector<HermitianOperator> seeds,
                          int max_iters, double rel_tol) {
  const int d = e.dim();
  RestartOutcome out;
  double prev = -1.0;
  for (int iter = 0; iter < max_iters; ++iter) {
    const std::vector<HermitianOperator> elements = retract_to_povm(d, seeds);

    // Resynthesis step: top eigenvector of each mapping operator, which is
    // globally optimal for the fixed measurement.
    double value = 0.0;
    std::vector<PureState> phis;
    phis.reserve(elements.size());
    for (const HermitianOperator& el : elements) {
      HermitianOperator m = HermitianOperator::zero(d);
      for (int i = 0; i < e.size(); ++i) {
        m = m + (e.prior(i) * el.expectation(e.state(i))) * projector(e.state(i));
      }
      const EigenPair top = lambda_max(m);
      value += top.value;
      phis.push_back(top.vector);
    }
    if (value > out.value) {
      out.value = value;
      out.elements = elements;
    }
    out.iterations = iter + 1;
    if (iter >= 2 && std::abs(value - prev) < rel_tol * std::max(1.0, std::abs(value))) {
      out.hit_tol = true;
      break;
    }
    prev = value;

    // Measurement step: with resynthesis fixed, the objective is linear in
    // each element with reward R_b; the fixed-point update is the
    // R_b E_b R_b sandwich followed by the retraction above.
    seeds.clear();
    for (std::size_t b = 0; b < elements.size(); ++b) {
      HermitianOperator reward = HermitianOperator::zero(d);
      for (int i = 0; i < e.size(); ++i) {
        const double o = overlap(phis[b], e.state(i));
        reward = reward + (e.prior(i) * o * o) * projector(e.state(i));
      }
      seeds.push_back(sandwich(reward, elements[b]));
    }
  }
  return out;
}

// Weight pruning plus a final re-retraction so the reported POVM resolves
// the identity exactly, then a fresh evaluation for consistency.
RestartOutcome finalize_restart(const Ensemble& e, RestartOutcome raw) {
  std::vector<HermitianOperator> kept;
  kept.reserve(raw.elements.size());
  for (const HermitianOperator& el : raw.elements) {
    if (el.trace_real() >= 1e-12) kept.push_back(el);
  }
  if (kept.empty()) kept.push_back(HermitianOperator::identity(e.dim()));
  raw.elements = retract_to_povm(e.dim(), kept);
  raw.value = achievable_fidelity(e, Povm(e.dim(), raw.elements));
  return raw;
}

}  // namespace

OptimizationReport accessible_fidelity(const Ensemble& e, const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) throw std::invalid_argument("optimizer: restarts must be >= 1");
  if (cfg.max_iters < 1) throw std::invalid_argument("optimizer: max_iters must be >= 1");
  if (cfg.rel_tol <= 0.0) throw std::invalid_argument("optimizer: rel_tol must be positive");
  if (cfg.max_outcomes < 0) {
    throw std::invalid_argument("optimizer: max_outcomes must be >= 1 (0 selects d^2)");
  }
  const int outcomes = cfg.max_outcomes > 0 ? cfg.max_outcomes : e.dim() * e.dim();

  std::vector<RestartOutcome> runs;
  runs.reserve(static_cast<std::size_t>(cfg.restarts) + 2);
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng(cfg.seed ^ static_cast<std::uint64_t>(r));
    runs.push_back(finalize_restart(
        e, run_seesaw(e, random_seeds(e, outcomes, rng), cfg.max_iters, cfg.rel_tol)));
  }
  // Deterministic warm starts guarantee the result dominates the analytic
  // lower bounds instead of relying on restart luck.
  runs.push_back(finalize_restart(
      e, run_seesaw(e, srm(e).elements(), cfg.max_iters, cfg.rel_tol)));
  if (e.size() == 2 && e.dim() == 2) {
    try {
      runs.push_back(finalize_restart(
          e, run_seesaw(e, helstrom(e).elements(), cfg.max_iters, cfg.rel_tol)));
    } catch (const std::invalid_argument&) {
      // Degenerate decision operator (identical states); nothing to add.
    }
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].value > runs[best].value) best = r;  // ties keep the lowest index
  }

  Povm povm(e.dim(), runs[best].elements);
  Strategy strategy = optimal_resynthesis(e, povm);
  OptimizationReport report{runs[best].value,
                            std::move(povm),
                            std::move(strategy),
                            {},
                            {},
                            cfg.seed,
                            true};
  for (const RestartOutcome& r : runs) {
    report.per_restart_values.push_back(r.value);
    report.iterations_used.push_back(r.iterations);
    report.converged = report.converged && r.hit_tol;
  }
  return report;
}

namespace {

double eval_priors(const std::vector<PureState>& states, const std::vector<double>& priors,
                   const OptimizerConfig& cfg) {
  std::vector<WeightedState> items;
  items.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) items.push_back({priors[i], states[i]});
  return accessible_fidelity(Ensemble(states.front().dim(), std::move(items)), cfg)
      .best_value;
}

// Golden-section minimum of g on [lo, hi] to the argument tolerance.
std::pair<double, double> golden_min(const std::function<double(double)>& g, double lo,
                                     double hi, double arg_tol) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = g(x1);
  double f2 = g(x2);
  while (b - a > arg_tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = g(x2);
    }
  }
  const double mid = 0.5 * (a + b);
  double fm = g(mid);
  if (f1 < fm) return {x1, f1};
  if (f2 < fm) return {x2, f2};
  return {mid, fm};
}

// Compositions of `total` into k nonnegative parts, emitted via callback.
void for_each_composition(int total, int k, std::vector<int>& parts,
                          const std::function<void(const std::vector<int>&)>& emit) {
  if (k == 1) {
    parts.push_back(total);
    emit(parts);
    parts.pop_back();
    return;
  }
  for (int c = 0; c <= total; ++c) {
    parts.push_back(c);
    for_each_composition(total - c, k - 1, parts, emit);
    parts.pop_back();
  }
}

}  // namespace

QuantumnessResult quantumness(const std::vector<PureState>& states,
                              const OptimizerConfig& cfg) {
  const int k = static_cast<int>(states.size());
  if (k < 2) throw std::invalid_argument("quantumness: need at least 2 states");

  std::vector<double> best_priors(static_cast<std::size_t>(k), 1.0 / k);
  double best = eval_priors(states, best_priors, cfg);

  // Coarse simplex sweep first; keeps the local search out of obviously
  // wrong basins when the landscape has structure.
  if (k <= 3 && cfg.prior_min_grid >= 2) {
    const int cells = cfg.prior_min_grid - 1;
    std::vector<int> parts;
    for_each_composition(cells, k, parts, [&](const std::vector<int>& c) {
      std::vector<double> priors(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) priors[static_cast<std::size_t>(i)] =
          static_cast<double>(c[static_cast<std::size_t>(i)]) / cells;
      int nonzero = 0;
      for (double p : priors)
        if (p > 0.0) ++nonzero;
      if (nonzero < 2) return;  // ensembles need two carried states
      const double v = eval_priors(states, priors, cfg);
      if (v < best - 1e-12) {
        best = v;
        best_priors = priors;
      }
    });
  }

  // Iterated local search: golden-section over mass transfers between pairs.
  for (int pass = 0; pass < 8; ++pass) {
    bool improved = false;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        const double pi = best_priors[static_cast<std::size_t>(i)];
        const double pj = best_priors[static_cast<std::size_t>(j)];
        if (pi + pj < 1e-12) continue;
        auto with_transfer = [&](double t) {
          std::vector<double> priors = best_priors;
          priors[static_cast<std::size_t>(i)] = pi - t;
          priors[static_cast<std::size_t>(j)] = pj + t;
          int nonzero = 0;
          for (double p : priors)
            if (p > 1e-15) ++nonzero;
          if (nonzero < 2) return 1.0 + 1e-6;  // out of the feasible region
          return eval_priors(states, priors, cfg);
        };
        const auto [t, v] = golden_min(with_transfer, -pj, pi, 1e-6);
        if (v < best - 1e-12) {
          best = v;
          best_priors[static_cast<std::size_t>(i)] = pi - t;
          best_priors[static_cast<std::size_t>(j)] = pj + t;
          improved = true;
        }
      }
    }
    if (!improved) break;
  }

  std::vector<WeightedState> items;
  for (int i = 0; i < k; ++i)
    items.push_back({best_priors[static_cast<std::size_t>(i)], states[static_cast<std::size_t>(i)]});
  OptimizationReport report =
      accessible_fidelity(Ensemble(states.front().dim(), std::move(items)), cfg);
  return {report.best_value, std::move(best_priors), std::move(report)};
}

double sic_candidate_value(int d) {
  return achievable_fidelity(sic_ensemble(d), sic_povm(d));
}

std::vector<std::pair<double, double>> srm_alpha_scan(const std::vector<double>& alpha_grid) {
  std::vector<std::pair<double, double>> out;
  out.reserve(alpha_grid.size());
  for (double alpha : alpha_grid) {
    const double numeric = srm_lower_bound(lifted_trine(alpha));
    const double closed = trine_srm(alpha);
    if (std::abs(numeric - closed) > 1e-10) {
      throw std::logic_error("srm_alpha_scan: numeric value " + std::to_string(numeric) +
                             " disagrees with the closed form " + std::to_string(closed) +
                             " at alpha = " + std::to_string(alpha));
    }
    out.emplace_back(alpha, numeric);
  }
  return out;
}

}  // namespace qlab
