#include "qlab/ensemble.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "qlab/rng.hpp"

namespace qlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Ensemble::Ensemble(int dim, std::vector<WeightedState> items)
    : dim_(dim), items_(std::move(items)) {
  if (dim_ <= 0) throw std::invalid_argument("ensemble dimension must be positive");
  if (items_.size() < 2) throw std::invalid_argument("ensemble needs at least 2 items");
  double total = 0.0;
  for (WeightedState& it : items_) {
    if (it.state.dim() != dim_) {
      throw std::invalid_argument("ensemble state dimension mismatch");
    }
    if (it.prior < -1e-12) {
      throw std::invalid_argument("negative prior " + std::to_string(it.prior));
    }
    if (it.prior < 0.0) it.prior = 0.0;
    total += it.prior;
  }
  if (total <= 0.0) throw std::invalid_argument("priors sum to zero");
  for (WeightedState& it : items_) it.prior /= total;
}

std::vector<PureState> Ensemble::states() const {
  std::vector<PureState> out;
  out.reserve(items_.size());
  for (const WeightedState& it : items_) out.push_back(it.state);
  return out;
}

Ensemble equal_prior(int dim, std::vector<PureState> states) {
  std::vector<WeightedState> items;
  items.reserve(states.size());
  const double p = 1.0 / static_cast<double>(states.size());
  for (PureState& s : states) items.push_back({p, std::move(s)});
  return Ensemble(dim, std::move(items));
}

HermitianOperator density_operator(const Ensemble& e) {
  HermitianOperator rho = HermitianOperator::zero(e.dim());
  for (const WeightedState& it : e.items()) rho = rho + it.prior * projector(it.state);
  return rho;
}

Ensemble two_state(double theta, double p_skew) {
  if (theta < 0.0 || theta > kPi) {
    throw std::invalid_argument("two_state: theta must lie in [0, pi]");
  }
  if (p_skew < 0.0 || p_skew >= 1.0) {
    throw std::invalid_argument("two_state: prior skew must lie in [0, 1)");
  }
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  std::vector<WeightedState> items;
  items.push_back({(1.0 - p_skew) / 2.0, PureState({cxd(c, 0.0), cxd(-s, 0.0)})});
  items.push_back({(1.0 + p_skew) / 2.0, PureState({cxd(c, 0.0), cxd(s, 0.0)})});
  return Ensemble(2, std::move(items));
}

Ensemble real_symmetric(int m) {
  if (m < 2) throw std::invalid_argument("real_symmetric: need m >= 2");
  std::vector<PureState> states;
  states.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const double a = static_cast<double>(k) * kPi / static_cast<double>(m);
    states.push_back(PureState({cxd(std::cos(a), 0.0), cxd(std::sin(a), 0.0)}));
  }
  return equal_prior(2, std::move(states));
}

std::vector<std::array<double, 3>> platonic_bloch_vectors(PlatonicSolid solid) {
  std::vector<std::array<double, 3>> v;
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  switch (solid) {
    case PlatonicSolid::tetrahedron:
      v = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
      break;
    case PlatonicSolid::octahedron:
      v = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
      break;
    case PlatonicSolid::cube:
      for (int sx : {-1, 1})
        for (int sy : {-1, 1})
          for (int sz : {-1, 1})
            v.push_back({static_cast<double>(sx), static_cast<double>(sy),
                         static_cast<double>(sz)});
      break;
    case PlatonicSolid::icosahedron:
      for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) {
          v.push_back({0.0, s1 * 1.0, s2 * phi});
          v.push_back({s1 * 1.0, s2 * phi, 0.0});
          v.push_back({s2 * phi, 0.0, s1 * 1.0});
        }
      break;
    case PlatonicSolid::dodecahedron:
      for (int sx : {-1, 1})
        for (int sy : {-1, 1})
          for (int sz : {-1, 1})
            v.push_back({static_cast<double>(sx), static_cast<double>(sy),
                         static_cast<double>(sz)});
      for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) {
          v.push_back({0.0, s1 / phi, s2 * phi});
          v.push_back({s1 / phi, s2 * phi, 0.0});
          v.push_back({s2 * phi, 0.0, s1 / phi});
        }
      break;
  }
  for (std::array<double, 3>& x : v) {
    const double n = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    x = {x[0] / n, x[1] / n, x[2] / n};
  }
  return v;
}

PureState bloch_state(double nx, double ny, double nz) {
  // |psi><psi| = (I + n.sigma)/2 with n on the unit sphere.
  const double a = std::sqrt(std::max(0.0, (1.0 + nz) / 2.0));
  if (a < 1e-8) return PureState::basis(2, 1);
  return PureState::normalized({cxd(a, 0.0), cxd(nx / (2.0 * a), ny / (2.0 * a))});
}

Ensemble platonic(PlatonicSolid solid) {
  std::vector<PureState> states;
  for (const std::array<double, 3>& n : platonic_bloch_vectors(solid)) {
    states.push_back(bloch_state(n[0], n[1], n[2]));
  }
  return equal_prior(2, std::move(states));
}

Ensemble lifted_trine(double alpha) {
  if (alpha < 0.0 || alpha > 1.0) {
    throw std::invalid_argument("lifted_trine: alpha must lie in [0, 1]");
  }
  const double s = std::sqrt(1.0 - alpha);
  const double t = std::sqrt(alpha);
  const double h = std::sqrt(3.0) / 2.0;
  std::vector<PureState> states;
  states.push_back(PureState::normalized({cxd(s, 0.0), cxd(0.0, 0.0), cxd(t, 0.0)}));
  states.push_back(
      PureState::normalized({cxd(-0.5 * s, 0.0), cxd(h * s, 0.0), cxd(t, 0.0)}));
  states.push_back(
      PureState::normalized({cxd(-0.5 * s, 0.0), cxd(-h * s, 0.0), cxd(t, 0.0)}));
  return equal_prior(3, std::move(states));
}

Ensemble sic_ensemble(int d) {
  std::vector<PureState> states;
  if (d == 2) {
    for (const std::array<double, 3>& n :
         platonic_bloch_vectors(PlatonicSolid::tetrahedron)) {
      states.push_back(bloch_state(n[0], n[1], n[2]));
    }
  } else if (d == 3) {
    // Shift/clock orbit of the fiducial (1,1,0)/sqrt(2).
    const std::vector<cxd> fid = {cxd(1.0 / std::sqrt(2.0), 0.0),
                                  cxd(1.0 / std::sqrt(2.0), 0.0), cxd(0.0, 0.0)};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        // (X^a Z^b f)_j = w^{b(j-a)} f_{j-a} with w = exp(2 pi i / 3).
        std::vector<cxd> v(3);
        for (int j = 0; j < 3; ++j) {
          const int src = ((j - a) % 3 + 3) % 3;
          const cxd phase = std::polar(1.0, 2.0 * kPi * ((b * src) % 3) / 3.0);
          v[static_cast<std::size_t>(j)] = phase * fid[static_cast<std::size_t>(src)];
        }
        states.push_back(PureState(std::move(v)).canonical_phase());
      }
    }
  } else {
    throw std::invalid_argument("sic_ensemble: only d = 2 and d = 3 are supported");
  }
  // Guard the equiangularity condition rather than trusting the construction.
  const double target = 1.0 / static_cast<double>(d + 1);
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      const double o2 = std::norm(inner(states[i], states[j]));
      if (std::abs(o2 - target) > 1e-10) {
        throw std::logic_error("sic_ensemble: overlap condition violated");
      }
    }
  }
  return equal_prior(d, std::move(states));
}

Ensemble haar_sample(int d, int n, std::uint64_t seed) {
  if (d <= 0) throw std::invalid_argument("haar_sample: dimension must be positive");
  if (n < 2) throw std::invalid_argument("haar_sample: need n >= 2");
  Rng rng(seed);
  std::vector<PureState> states;
  states.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    std::vector<cxd> v(static_cast<std::size_t>(d));
    for (cxd& z : v) z = rng.gauss_complex();
    states.push_back(PureState::normalized(std::move(v)).canonical_phase());
  }
  return equal_prior(d, std::move(states));
}

std::vector<std::vector<double>> overlap_matrix(const Ensemble& e) {
  const int n = e.size();
  std::vector<std::vector<double>> m(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          overlap(e.state(i), e.state(j));
  return m;
}

}  // namespace qlab
