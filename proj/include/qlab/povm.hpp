#pragma once

#include <vector>

#include "qlab/ensemble.hpp"
#include "qlab/linalg.hpp"
#include "qlab/rng.hpp"

namespace qlab {

struct PovmDiagnostics {
  double min_eigenvalue;          // most negative element eigenvalue
  double completeness_residual;   // ||sum_b E_b - I||_max
};

// Residuals for a candidate element list; never throws, so deliberately
// broken candidates can be inspected.
PovmDiagnostics validate_elements(int dim, const std::vector<HermitianOperator>& elements);

class PovmError : public std::runtime_error {
 public:
  PovmError(const std::string& what, PovmDiagnostics diagnostics)
      : std::runtime_error(what), diagnostics_(diagnostics) {}
  const PovmDiagnostics& diagnostics() const { return diagnostics_; }

 private:
  PovmDiagnostics diagnostics_;
};

// Finite positive operator-valued measure. Construction enforces
// min eigenvalue >= -1e-9 on every element and ||sum E_b - I||_max <= 1e-9;
// the loose PSD floor tolerates optimizer rounding noise.
class Povm {
 public:
  Povm(int dim, std::vector<HermitianOperator> elements);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const HermitianOperator& element(int b) const {
    return elements_[static_cast<std::size_t>(b)];
  }
  const std::vector<HermitianOperator>& elements() const { return elements_; }
  PovmDiagnostics validate() const { return validate_elements(dim_, elements_); }

 private:
  int dim_;
  std::vector<HermitianOperator> elements_;
};

// The trivial one-element measurement {I}.
Povm identity_povm(int d);

// Rank-1 projectors onto an orthonormal basis (checked to 1e-10).
Povm von_neumann(const std::vector<PureState>& basis);

// Minimum-error measurement for a binary qubit ensemble: eigenprojectors of
// pi_0 Pi_0 - pi_1 Pi_1. Throws if that operator is degenerate (identical
// states with equal priors).
Povm helstrom(const Ensemble& e);

// Square-root ("pretty good") measurement {pi_i rho^{-1/2} Pi_i rho^{-1/2}}.
// When rho is rank deficient the complement projector is appended as an
// extra outcome so the measure resolves the identity on all of C^d.
Povm srm(const Ensemble& e);

// Six-outcome measurement for the lifted trines, with the mixing angle taken
// from the fitted expression sin^2 phi = (1-alpha)/(1+29.591 alpha). Valid
// for 0 < alpha < 0.061; outside that window the fit is not trusted and the
// constructor refuses.
Povm shor_trine(double alpha);

// {(1/d)|psi_i><psi_i|} over the d^2 equiangular states.
Povm sic_povm(int d);

// Group-covariant qubit measurement {(2/|G|) U_g |e><e| U_g^dag}. The
// rotations are not assumed to form a group; the resolution of the identity
// is checked numerically and a residual above 1e-8 is an error.
Povm group_covariant(const PureState& nucleus, const std::vector<ComplexMatrix>& rotations);

// Unitaries carrying |0> to each vertex state of the solid; feeding them to
// group_covariant with nucleus |0> reproduces the ensemble's own projectors
// with weight 2/|G|.
std::vector<ComplexMatrix> platonic_rotations(PlatonicSolid solid);

// Solution X of rho X + X rho = 2(pi_0 Pi_0 - pi_1 Pi_1) for a two-item
// ensemble, built spectrally in the rho eigenbasis. Requires invertible rho.
HermitianOperator x_operator(const Ensemble& e);

// Turns arbitrary PSD seed operators into a complete element list by
// sandwiching with S^{-1/2}, S = sum of seeds; appends the off-support
// complement when the seeds do not span C^d.
std::vector<HermitianOperator> retract_to_povm(int dim,
                                               const std::vector<HermitianOperator>& seeds);

// Random rank-1 POVM: `outcomes` Gaussian rays with random weights, retracted
// through S^{-1/2} . S^{-1/2}. With real_amplitudes the rays (and hence all
// elements) have real entries.
Povm random_rank1_povm(int dim, int outcomes, Rng& rng, bool real_amplitudes = false);

// Haar-style random orthonormal basis (Gram-Schmidt on a Gaussian matrix).
std::vector<PureState> random_orthonormal_basis(int dim, Rng& rng);
Povm random_von_neumann(int dim, Rng& rng);

}  // namespace qlab
