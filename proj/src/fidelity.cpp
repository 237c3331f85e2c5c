#include "qlab/fidelity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qlab {

namespace {

void require_same_dim(const Ensemble& e, const Povm& p) {
  if (e.dim() != p.dim()) {
    throw std::invalid_argument("ensemble dimension " + std::to_string(e.dim()) +
                                " does not match povm dimension " + std::to_string(p.dim()));
  }
}

// Fidelity values are probabilities; rounding may push them a hair outside
// [0, 1], anything further means a genuine bug upstream.
double clamp_unit(double v, const char* what) {
  if (v < -1e-9 || v > 1.0 + 1e-9) {
    throw std::runtime_error(std::string(what) + " outside [0,1]: " + std::to_string(v));
  }
  return std::min(1.0, std::max(0.0, v));
}

}  // namespace

Strategy::Strategy(Povm povm, std::vector<PureState> resynthesis)
    : povm_(std::move(povm)), resynthesis_(std::move(resynthesis)) {
  if (static_cast<int>(resynthesis_.size()) != povm_.size()) {
    throw std::invalid_argument("strategy needs one resynthesis state per outcome");
  }
  for (const PureState& v : resynthesis_) {
    if (v.dim() != povm_.dim()) {
      throw std::invalid_argument("resynthesis state dimension mismatch");
    }
  }
}

std::vector<HermitianOperator> mapping_operators(const Ensemble& e, const Povm& p) {
  require_same_dim(e, p);
  std::vector<HermitianOperator> ops;
  ops.reserve(static_cast<std::size_t>(p.size()));
  HermitianOperator total = HermitianOperator::zero(e.dim());
  for (int b = 0; b < p.size(); ++b) {
    HermitianOperator m = HermitianOperator::zero(e.dim());
    for (int i = 0; i < e.size(); ++i) {
      const double w = e.prior(i) * p.element(b).expectation(e.state(i));
      m = m + w * projector(e.state(i));
    }
    total = total + m;
    ops.push_back(std::move(m));
  }
  const HermitianOperator rho = density_operator(e);
  const double resid = (total - rho).matrix().max_abs();
  if (resid > 1e-9) {
    throw std::runtime_error("mapping operators do not sum to rho (residual " +
                             std::to_string(resid) + ")");
  }
  return ops;
}

double achievable_fidelity(const Ensemble& e, const Povm& p) {
  double f = 0.0;
  for (const HermitianOperator& m : mapping_operators(e, p)) {
    f += lambda_max(m).value;
  }
  return clamp_unit(f, "achievable fidelity");
}

Strategy optimal_resynthesis(const Ensemble& e, const Povm& p) {
  std::vector<PureState> states;
  states.reserve(static_cast<std::size_t>(p.size()));
  for (const HermitianOperator& m : mapping_operators(e, p)) {
    states.push_back(lambda_max(m).vector);
  }
  return Strategy(p, std::move(states));
}

double average_fidelity(const Ensemble& e, const Strategy& s) {
  require_same_dim(e, s.povm());
  double f = 0.0;
  for (int b = 0; b < s.povm().size(); ++b) {
    for (int i = 0; i < e.size(); ++i) {
      const double joint = e.prior(i) * s.povm().element(b).expectation(e.state(i));
      const double o = overlap(s.resynthesis(b), e.state(i));
      f += joint * o * o;
    }
  }
  return clamp_unit(f, "average fidelity");
}

std::vector<double> posterior(const Ensemble& e, const Povm& p, int outcome_index) {
  require_same_dim(e, p);
  if (outcome_index < 0 || outcome_index >= p.size()) {
    throw std::invalid_argument("posterior: outcome index out of range");
  }
  const HermitianOperator& el = p.element(outcome_index);
  std::vector<double> joint(static_cast<std::size_t>(e.size()));
  double pb = 0.0;
  for (int i = 0; i < e.size(); ++i) {
    joint[static_cast<std::size_t>(i)] =
        std::max(0.0, e.prior(i) * el.expectation(e.state(i)));
    pb += joint[static_cast<std::size_t>(i)];
  }
  if (pb < 1e-15) {
    throw std::domain_error("posterior undefined for zero-probability outcome " +
                            std::to_string(outcome_index));
  }
  for (double& x : joint) x /= pb;
  return joint;
}

double success_probability(const Ensemble& e, const Povm& p) {
  require_same_dim(e, p);
  double total = 0.0;
  for (int b = 0; b < p.size(); ++b) {
    double best = 0.0;
    for (int i = 0; i < e.size(); ++i) {
      best = std::max(best, e.prior(i) * p.element(b).expectation(e.state(i)));
    }
    total += best;
  }
  return clamp_unit(total, "success probability");
}

double srm_lower_bound(const Ensemble& e) {
  const HermitianOperator rho = density_operator(e);
  const HermitianOperator half =
      spectral_fn(rho, [](double x) { return 1.0 / std::sqrt(x); }, 1e-10);
  double f = 0.0;
  for (int i = 0; i < e.size(); ++i) {
    const HermitianOperator bi = sandwich(half, projector(e.state(i)));
    HermitianOperator m = HermitianOperator::zero(e.dim());
    for (int j = 0; j < e.size(); ++j) {
      const double w = e.prior(i) * e.prior(j) * bi.expectation(e.state(j));
      m = m + w * projector(e.state(j));
    }
    f += lambda_max(m).value;
  }
  return clamp_unit(f, "srm lower bound");
}

double lambda_max_bound(const Ensemble& e) {
  return lambda_max(density_operator(e)).value;
}

}  // namespace qlab
