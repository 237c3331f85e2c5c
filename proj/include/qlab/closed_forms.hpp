#pragma once

#include <functional>

namespace qlab {

// Analytic scalar formulas for the ensembles treated exactly; they anchor
// the numerical optimizer and drive the key-rate tradeoff scans. x always
// denotes the overlap magnitude |<psi_0|psi_1>|.

// Best two-copy cloning fidelity for a pair of states with overlap x.
double clone_fidelity(double x);

// Minimum-error discrimination success for an equal-prior pair,
// (1 + sqrt(1 - x^2))/2.
double helstrom_success(double x);

// Accessible fidelity of the binary source with Hilbert angle theta and
// prior skew P: (1 + sqrt(cos^2 t + (P^2 cos^2 t + sin^2 t) sin^2 t))/2.
double two_state_accessible(double theta, double p_skew);

// Quantumness of a two-state set, (1 + sqrt(1 - x^2 + x^4))/2; the minimum
// of two_state_accessible over the prior skew.
double two_state_quantumness(double x);

// Accessible fidelity of the unitarily invariant ensemble on a d-dimensional
// space, evaluated from the gamma-function expression via lgamma. nu selects
// the scalar field: 1 real, 2 complex, 4 quaternionic; the values reduce to
// 3/(d+2), 2/(d+1) and 3/(2d+1).
double uniform_fidelity(int d, int nu);

// Achievable fidelity of the square-root measurement on the lifted trines,
// as a closed form in the lifting parameter alpha.
double trine_srm(double alpha);

// Fitted mixing angle of the six-outcome trine measurement,
// sin^2 phi = (1 - alpha)/(1 + 29.591 alpha).
double shor_fit_sin2phi(double alpha);

// Unambiguous-discrimination rate for a two-state alphabet, 1 - x.
double b92_rate(double x);

// Unambiguous-discrimination rate for the lifted trines: 3 alpha up to
// alpha = 1/3, then (3/2)(1 - alpha).
double trine_usd(double alpha);

// Security/rate product T(x) = (1 - x) [1 - Q(x)] for the two-state alphabet.
double figure_of_merit_two_state(double x);

// Trine analogue T(alpha) = P(alpha) [1 - F_srm(alpha)]. Uses the
// square-root-measurement fidelity in place of the (unknown) trine
// quantumness, so the output is conditional on that supposition.
double figure_of_merit_trine(double alpha);

struct ScalarOptimum {
  double arg;
  double value;
};

// Bracket on a uniform grid (default 10^4 intervals), then golden-section
// refine to the argument tolerance.
ScalarOptimum scalar_maximize(const std::function<double(double)>& f, double lo,
                              double hi, int grid_points = 10001,
                              double arg_tol = 1e-6);
ScalarOptimum scalar_minimize(const std::function<double(double)>& f, double lo,
                              double hi, int grid_points = 10001,
                              double arg_tol = 1e-6);

}  // namespace qlab
