#pragma once

#include <vector>

#include "qlab/ensemble.hpp"
#include "qlab/povm.hpp"

namespace qlab {

// A measurement together with one resynthesis state per outcome: the
// complete measure-and-prepare protocol.
class Strategy {
 public:
  Strategy(Povm povm, std::vector<PureState> resynthesis);

  const Povm& povm() const { return povm_; }
  const std::vector<PureState>& resynthesis() const { return resynthesis_; }
  const PureState& resynthesis(int b) const {
    return resynthesis_[static_cast<std::size_t>(b)];
  }

 private:
  Povm povm_;
  std::vector<PureState> resynthesis_;
};

// M_b = sum_i pi_i tr(Pi_i E_b) Pi_i, one per outcome. The returned list
// satisfies sum_b M_b = rho (checked to 1e-9).
std::vector<HermitianOperator> mapping_operators(const Ensemble& e, const Povm& p);

// F(E) = sum_b lambda_1(M_b): the best average fidelity the measurement
// supports under optimal per-outcome resynthesis.
double achievable_fidelity(const Ensemble& e, const Povm& p);

// The strategy realizing F(E): resynthesis state b is the top eigenvector
// of M_b.
Strategy optimal_resynthesis(const Ensemble& e, const Povm& p);

// F(E, M) = sum_{b,i} pi_i tr(Pi_i E_b) |<phi_b|psi_i>|^2 for a fixed
// strategy.
double average_fidelity(const Ensemble& e, const Strategy& s);

// Bayes posterior p(i|b) over inputs for one outcome. Outcomes with
// probability below 1e-15 are treated as impossible and throw.
std::vector<double> posterior(const Ensemble& e, const Povm& p, int outcome_index);

// Maximum-likelihood hypothesis-testing success: sum_b max_i pi_i tr(Pi_i E_b).
double success_probability(const Ensemble& e, const Povm& p);

// Square-root-measurement lower bound on the accessible fidelity,
// sum_i lambda_1( sum_j pi_i pi_j tr(rho^{-1/2} Pi_i rho^{-1/2} Pi_j) Pi_j ).
// Equals achievable_fidelity(e, srm(e)); the two routes are kept separate so
// they can check each other.
double srm_lower_bound(const Ensemble& e);

// lambda_1(rho): the fidelity of the do-nothing strategy (identity
// measurement plus the best fixed output), never below 1/d.
double lambda_max_bound(const Ensemble& e);

}  // namespace qlab
