#include "qlab/povm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qlab {

namespace {

double inv_sqrt(double x) { return 1.0 / std::sqrt(x); }

}  // namespace

// Sandwich each seed operator with S^{-1/2}, S = sum of seeds. Directions the
// seeds carry at relative weight below 1e-6 are rerouted to the complement
// outcome: rescaling them out of rounding noise would wreck the elements'
// positivity. Seeds spanning only a subspace get the complement too.
std::vector<HermitianOperator> retract_to_povm(int dim,
                                               const std::vector<HermitianOperator>& seeds) {
  HermitianOperator total = HermitianOperator::zero(dim);
  for (const HermitianOperator& f : seeds) total = total + f;
  const HermitianOperator half = spectral_fn(total, inv_sqrt, 1e-6);
  std::vector<HermitianOperator> elements;
  elements.reserve(seeds.size() + 1);
  for (const HermitianOperator& f : seeds) elements.push_back(sandwich(half, f));
  const HermitianOperator support = sandwich(half, total);
  const HermitianOperator gap = HermitianOperator::identity(dim) - support;
  if (gap.matrix().max_abs() > 1e-12) elements.push_back(gap);
  return elements;
}

PovmDiagnostics validate_elements(int dim, const std::vector<HermitianOperator>& elements) {
  double min_eig = 0.0;
  ComplexMatrix sum(dim);
  for (const HermitianOperator& e : elements) {
    const std::vector<EigenPair> eig = herm_eig(e);
    min_eig = std::min(min_eig, eig.back().value);
    sum += e.matrix();
  }
  sum -= ComplexMatrix::identity(dim);
  return {min_eig, sum.max_abs()};
}

Povm::Povm(int dim, std::vector<HermitianOperator> elements)
    : dim_(dim), elements_(std::move(elements)) {
  if (dim_ <= 0) throw std::invalid_argument("povm dimension must be positive");
  if (elements_.empty()) throw std::invalid_argument("povm needs at least one element");
  for (const HermitianOperator& e : elements_) {
    if (e.dim() != dim_) throw std::invalid_argument("povm element dimension mismatch");
  }
  const PovmDiagnostics diag = validate_elements(dim_, elements_);
  if (diag.min_eigenvalue < -1e-9) {
    throw PovmError("povm element not positive semi-definite (min eigenvalue " +
                        std::to_string(diag.min_eigenvalue) + ")",
                    diag);
  }
  if (diag.completeness_residual > 1e-9) {
    throw PovmError("povm does not resolve the identity (residual " +
                        std::to_string(diag.completeness_residual) + ")",
                    diag);
  }
}

Povm identity_povm(int d) {
  return Povm(d, {HermitianOperator::identity(d)});
}

Povm von_neumann(const std::vector<PureState>& basis) {
  if (basis.empty()) throw std::invalid_argument("von_neumann: empty basis");
  const int d = basis.front().dim();
  if (static_cast<int>(basis.size()) != d) {
    throw std::invalid_argument("von_neumann: basis must have d vectors");
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const double g = std::abs(inner(basis[i], basis[j]) - (i == j ? 1.0 : 0.0));
      if (g > 1e-10) {
        throw std::invalid_argument("von_neumann: basis not orthonormal (residual " +
                                    std::to_string(g) + ")");
      }
    }
  }
  std::vector<HermitianOperator> elements;
  elements.reserve(basis.size());
  for (const PureState& v : basis) elements.push_back(projector(v));
  return Povm(d, std::move(elements));
}

Povm helstrom(const Ensemble& e) {
  if (e.size() != 2 || e.dim() != 2) {
    throw std::invalid_argument("helstrom: need a two-state qubit ensemble");
  }
  const HermitianOperator delta =
      e.prior(0) * projector(e.state(0)) - e.prior(1) * projector(e.state(1));
  const std::vector<EigenPair> eig = herm_eig(delta);
  if (std::abs(eig[0].value - eig[1].value) < 1e-12) {
    throw std::invalid_argument("helstrom: degenerate decision operator");
  }
  return Povm(2, {projector(eig[0].vector), projector(eig[1].vector)});
}

Povm srm(const Ensemble& e) {
  const int d = e.dim();
  const HermitianOperator rho = density_operator(e);
  const HermitianOperator half = spectral_fn(rho, inv_sqrt, 1e-10);
  std::vector<HermitianOperator> elements;
  elements.reserve(static_cast<std::size_t>(e.size()) + 1);
  for (int i = 0; i < e.size(); ++i) {
    elements.push_back(e.prior(i) * sandwich(half, projector(e.state(i))));
  }
  const HermitianOperator support = sandwich(half, rho);
  const HermitianOperator gap = HermitianOperator::identity(d) - support;
  if (gap.matrix().max_abs() > 1e-10) elements.push_back(gap);
  return Povm(d, std::move(elements));
}

Povm shor_trine(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.061)) {
    throw std::invalid_argument(
        "shor_trine: the fitted angle is only trusted for 0 < alpha < 0.061");
  }
  const double sin2 = (1.0 - alpha) / (1.0 + 29.591 * alpha);
  const double x = std::sqrt(sin2 / (1.0 - sin2));  // tan(phi_alpha)
  const double c = std::sqrt(2.0 / 3.0 * (1.0 - 1.0 / (2.0 * x * x)));
  const double w = std::sqrt(1.0 / (3.0 * x * x));
  const double h = std::sqrt(3.0) / 2.0;
  const std::vector<std::vector<double>> rays = {
      {0.0, c, 0.0},          {c * h, c * 0.5, 0.0},   {c * h, -c * 0.5, 0.0},
      {w, 0.0, w * x},        {-w * 0.5, w * h, w * x}, {-w * 0.5, -w * h, w * x}};
  std::vector<HermitianOperator> elements;
  for (const std::vector<double>& r : rays) {
    ComplexMatrix m(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        m(i, j) = cxd(r[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(j)], 0.0);
    elements.push_back(hermitian_unchecked(std::move(m)));
  }
  return Povm(3, std::move(elements));
}

Povm sic_povm(int d) {
  const Ensemble e = sic_ensemble(d);
  std::vector<HermitianOperator> elements;
  elements.reserve(static_cast<std::size_t>(e.size()));
  const double w = 1.0 / static_cast<double>(d);
  for (int i = 0; i < e.size(); ++i) elements.push_back(w * projector(e.state(i)));
  return Povm(d, std::move(elements));
}

Povm group_covariant(const PureState& nucleus, const std::vector<ComplexMatrix>& rotations) {
  if (nucleus.dim() != 2) {
    throw std::invalid_argument("group_covariant: qubit nucleus expected");
  }
  if (rotations.empty()) {
    throw std::invalid_argument("group_covariant: empty rotation list");
  }
  const double w = 2.0 / static_cast<double>(rotations.size());
  std::vector<HermitianOperator> elements;
  elements.reserve(rotations.size());
  for (const ComplexMatrix& u : rotations) {
    if (u.dim() != 2) throw std::invalid_argument("group_covariant: 2x2 rotations expected");
    elements.push_back(w * projector(apply(u, nucleus)));
  }
  const PovmDiagnostics diag = validate_elements(2, elements);
  if (diag.completeness_residual > 1e-8) {
    throw PovmError(
        "group_covariant: supplied rotations are not covariant-complete (residual " +
            std::to_string(diag.completeness_residual) + ")",
        diag);
  }
  return Povm(2, std::move(elements));
}

std::vector<ComplexMatrix> platonic_rotations(PlatonicSolid solid) {
  std::vector<ComplexMatrix> rotations;
  for (const std::array<double, 3>& n : platonic_bloch_vectors(solid)) {
    const PureState v = bloch_state(n[0], n[1], n[2]);
    // SU(2) element with first column v: maps |0> to the vertex state.
    ComplexMatrix u(2);
    u(0, 0) = v.amplitude(0);
    u(1, 0) = v.amplitude(1);
    u(0, 1) = -std::conj(v.amplitude(1));
    u(1, 1) = std::conj(v.amplitude(0));
    rotations.push_back(std::move(u));
  }
  return rotations;
}

HermitianOperator x_operator(const Ensemble& e) {
  if (e.size() != 2) throw std::invalid_argument("x_operator: need a two-item ensemble");
  const HermitianOperator rho = density_operator(e);
  const HermitianOperator delta =
      e.prior(0) * projector(e.state(0)) - e.prior(1) * projector(e.state(1));
  const std::vector<EigenPair> eig = herm_eig(rho);
  if (eig.back().value < 1e-12 * eig.front().value) {
    throw std::invalid_argument("x_operator: density operator is singular");
  }
  const int d = e.dim();
  ComplexMatrix x(d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      cxd dij = 0.0;
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          dij += std::conj(eig[static_cast<std::size_t>(i)].vector.amplitude(r)) *
                 delta.matrix()(r, c) * eig[static_cast<std::size_t>(j)].vector.amplitude(c);
      const cxd coeff = 2.0 * dij /
                        (eig[static_cast<std::size_t>(i)].value +
                         eig[static_cast<std::size_t>(j)].value);
      x += coeff * outer(eig[static_cast<std::size_t>(i)].vector,
                         eig[static_cast<std::size_t>(j)].vector);
    }
  }
  const HermitianOperator out = HermitianOperator(x);
  const ComplexMatrix resid =
      rho.matrix() * out.matrix() + out.matrix() * rho.matrix() -
      cxd(2.0, 0.0) * delta.matrix();
  if (resid.max_abs() > 1e-9) {
    throw std::runtime_error("x_operator: defining equation residual " +
                             std::to_string(resid.max_abs()));
  }
  return out;
}

Povm random_rank1_povm(int dim, int outcomes, Rng& rng, bool real_amplitudes) {
  if (outcomes < 1) throw std::invalid_argument("random_rank1_povm: outcomes < 1");
  std::vector<HermitianOperator> seeds;
  seeds.reserve(static_cast<std::size_t>(outcomes));
  for (int b = 0; b < outcomes; ++b) {
    std::vector<cxd> v(static_cast<std::size_t>(dim));
    for (cxd& z : v) z = real_amplitudes ? cxd(rng.gauss(), 0.0) : rng.gauss_complex();
    const double weight = rng.uniform(0.2, 1.0);
    seeds.push_back(weight * projector(PureState::normalized(std::move(v))));
  }
  return Povm(dim, retract_to_povm(dim, seeds));
}

std::vector<PureState> random_orthonormal_basis(int dim, Rng& rng) {
  std::vector<std::vector<cxd>> cols(static_cast<std::size_t>(dim),
                                     std::vector<cxd>(static_cast<std::size_t>(dim)));
  for (auto& col : cols)
    for (cxd& z : col) z = rng.gauss_complex();
  // Two Gram-Schmidt passes; fine at these dimensions.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        cxd p = 0.0;
        for (std::size_t k = 0; k < cols[i].size(); ++k)
          p += std::conj(cols[j][k]) * cols[i][k];
        for (std::size_t k = 0; k < cols[i].size(); ++k) cols[i][k] -= p * cols[j][k];
      }
      double n2 = 0.0;
      for (const cxd& z : cols[i]) n2 += std::norm(z);
      const double inv = 1.0 / std::sqrt(n2);
      for (cxd& z : cols[i]) z *= inv;
    }
  }
  std::vector<PureState> basis;
  basis.reserve(cols.size());
  for (std::vector<cxd>& col : cols)
    basis.push_back(PureState::normalized(std::move(col)).canonical_phase());
  return basis;
}

Povm random_von_neumann(int dim, Rng& rng) {
  return von_neumann(random_orthonormal_basis(dim, rng));
}

}  // namespace qlab
