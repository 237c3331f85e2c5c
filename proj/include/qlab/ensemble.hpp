#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qlab/linalg.hpp"

namespace qlab {

struct WeightedState {
  double prior;
  PureState state;
};

// A finite list of pure states with prior probabilities. The constructor
// rejects priors below -1e-12, clamps smaller negatives to zero and
// renormalizes the rest to sum to one. At least two items are required and
// all states must share the ensemble dimension.
class Ensemble {
 public:
  Ensemble(int dim, std::vector<WeightedState> items);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(items_.size()); }
  const std::vector<WeightedState>& items() const { return items_; }
  double prior(int i) const { return items_[static_cast<std::size_t>(i)].prior; }
  const PureState& state(int i) const {
    return items_[static_cast<std::size_t>(i)].state;
  }
  std::vector<PureState> states() const;

 private:
  int dim_;
  std::vector<WeightedState> items_;
};

// Convenience: equal priors 1/n over the given states.
Ensemble equal_prior(int dim, std::vector<PureState> states);

// rho = sum_i pi_i |psi_i><psi_i|.
HermitianOperator density_operator(const Ensemble& e);

// Binary source: states cos(theta/2)|0> -/+ ... with Hilbert-space angle
// theta in [0, pi] (overlap <psi0|psi1> = cos theta) and priors
// ((1-P)/2, (1+P)/2) for the skew P = p_skew in [0, 1).
Ensemble two_state(double theta, double p_skew);

// M equally spaced real qubit states (cos k*pi/M, sin k*pi/M), equal priors.
Ensemble real_symmetric(int m);

enum class PlatonicSolid { tetrahedron, octahedron, cube, icosahedron, dodecahedron };

// Unit vertex vectors of the solid in a fixed standard embedding. Any rigid
// rotation would do equally well; consumers must not rely on orientation.
std::vector<std::array<double, 3>> platonic_bloch_vectors(PlatonicSolid solid);

// Equal-prior qubit ensemble whose Bloch vectors are the solid's vertices.
Ensemble platonic(PlatonicSolid solid);

// Qubit state with Bloch vector (nx, ny, nz); the input must be unit length.
PureState bloch_state(double nx, double ny, double nz);

// Three symmetric vectors in C^3 with lifting parameter alpha in [0, 1];
// pairwise overlap (3*alpha - 1)/2, equal priors.
Ensemble lifted_trine(double alpha);

// d^2 equiangular states with |<psi_i|psi_j>|^2 = 1/(d+1), priors 1/d^2.
// Supported for d = 2 (Bloch tetrahedron) and d = 3 (shift/clock orbit of
// the fiducial (1,1,0)/sqrt(2), checked against the overlap condition at
// construction).
Ensemble sic_ensemble(int d);

// n states drawn i.i.d. from the unitarily invariant distribution on C^d
// (normalized complex Gaussian vectors), equal priors; deterministic in seed.
Ensemble haar_sample(int d, int n, std::uint64_t seed);

// |<psi_i|psi_j>| for all pairs; unit diagonal.
std::vector<std::vector<double>> overlap_matrix(const Ensemble& e);

}  // namespace qlab
