#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qlab/fidelity.hpp"

namespace qlab {

struct OptimizerConfig {
  // Outcome budget per restart; 0 means d^2 (enough for an optimal
  // measurement by the Davies-type bound).
  int max_outcomes = 0;
  int restarts = 32;
  int max_iters = 2000;
  double rel_tol = 1e-9;
  std::uint64_t seed = 0;
  // Simplex grid resolution for the quantumness outer loop (<= 3 states).
  int prior_min_grid = 33;
};

struct OptimizationReport {
  double best_value;
  Povm best_povm;
  Strategy best_strategy;
  // One entry per restart; the last entries are the deterministic
  // warm starts (square-root measurement, and Helstrom for binary qubit
  // ensembles) that pin the report above the analytic lower bounds.
  std::vector<double> per_restart_values;
  std::vector<int> iterations_used;
  std::uint64_t seed;
  bool converged;  // every restart hit rel_tol before the iteration cap
};

// Accessible fidelity sup_E F(E) by alternating ascent with random restarts.
// Each restart draws max_outcomes random rank-1 seeds, retracts them to a
// POVM, then alternates the closed-form resynthesis step with the
// reward-sandwich measurement update until the value stalls. Deterministic
// given (ensemble, cfg); restart r uses the stream seeded with seed ^ r.
OptimizationReport accessible_fidelity(const Ensemble& e, const OptimizerConfig& cfg);

struct QuantumnessResult {
  double value;
  std::vector<double> worst_priors;
  OptimizationReport report;  // certificate at the worst priors found
};

// Quantumness inf over priors of the accessible fidelity. Outer loop:
// coarse simplex grid (for up to 3 states) followed by coordinate-wise
// golden-section over pairwise prior transfers. Heuristic minimax; the
// report lets callers recheck the value independently.
QuantumnessResult quantumness(const std::vector<PureState>& states,
                              const OptimizerConfig& cfg);

// F for the equiangular ensemble measured with its own matched POVM;
// evaluates to 2/(d+1).
double sic_candidate_value(int d);

// Numerical square-root-measurement fidelity of the lifted trines over a
// grid of lifting parameters; each value is cross-checked against the
// closed form to 1e-10.
std::vector<std::pair<double, double>> srm_alpha_scan(const std::vector<double>& alpha_grid);

}  // namespace qlab
