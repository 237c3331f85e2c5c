#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qlab/closed_forms.hpp"
#include "qlab/fidelity.hpp"

using namespace qlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

Ensemble random_ensemble(int d, int n, Rng& rng) {
  std::vector<WeightedState> items;
  double total = 0.0;
  std::vector<double> priors;
  for (int i = 0; i < n; ++i) {
    priors.push_back(rng.uniform(0.05, 1.0));
    total += priors.back();
  }
  for (int i = 0; i < n; ++i) {
    std::vector<cxd> v(static_cast<std::size_t>(d));
    for (cxd& z : v) z = rng.gauss_complex();
    items.push_back({priors[static_cast<std::size_t>(i)] / total,
                     PureState::normalized(std::move(v))});
  }
  return Ensemble(d, std::move(items));
}

}  // namespace

TEST_CASE("mapping operators") {
  const Ensemble e = two_state(1.0, 0.3);
  const auto single = mapping_operators(e, identity_povm(2));
  REQUIRE(single.size() == 1);
  CHECK((single[0] - density_operator(e)).matrix().max_abs() <= 1e-12);

  // Orthogonal pair with the matching projective measurement: M_b = pi_b Pi_b.
  const Ensemble pair = two_state(kPi / 2.0, 0.4);
  const auto ops = mapping_operators(pair, von_neumann({pair.state(0), pair.state(1)}));
  for (int b = 0; b < 2; ++b) {
    CHECK((ops[static_cast<std::size_t>(b)] - pair.prior(b) * projector(pair.state(b)))
              .matrix()
              .max_abs() <= 1e-12);
  }

  // Real symmetric source: every real rank-1 element gives
  // lambda_1(M_b) = (3/8) tr(E_b), independent of M.
  Rng rng(31);
  for (int m : {3, 5, 8}) {
    const Ensemble sym = real_symmetric(m);
    const Povm p = random_rank1_povm(2, 3, rng, /*real_amplitudes=*/true);
    for (const HermitianOperator& mb : mapping_operators(sym, p)) {
      // tr(M_b) = tr(E_b)/2 for this source, so check against 2 tr(M_b).
      CHECK(lambda_max(mb).value ==
            doctest::Approx(0.75 * mb.trace_real()).epsilon(1e-10));
    }
  }

  CHECK_THROWS_AS(mapping_operators(lifted_trine(0.2), identity_povm(2)),
                  std::invalid_argument);
}

TEST_CASE("achievable fidelity closed cases") {
  Rng rng(77);

  // Real symmetric source: 3/4 for any real rank-1 measurement.
  for (int m : {3, 4, 5, 8}) {
    const Ensemble e = real_symmetric(m);
    for (int k = 0; k < 5; ++k) {
      CHECK(achievable_fidelity(e, random_rank1_povm(2, 3, rng, true)) ==
            doctest::Approx(0.75).epsilon(1e-10));
    }
  }

  // Platonic sources: 2/3 for the covariant orbit and for arbitrary bases.
  for (PlatonicSolid s : {PlatonicSolid::tetrahedron, PlatonicSolid::octahedron,
                          PlatonicSolid::cube, PlatonicSolid::icosahedron,
                          PlatonicSolid::dodecahedron}) {
    const Ensemble e = platonic(s);
    const Povm cov = group_covariant(PureState::basis(2, 0), platonic_rotations(s));
    CHECK(achievable_fidelity(e, cov) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(achievable_fidelity(e, random_von_neumann(2, rng)) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  }

  // Equiangular source measured by its own matched povm: 2/(d+1).
  for (int d : {2, 3}) {
    CHECK(std::abs(achievable_fidelity(sic_ensemble(d), sic_povm(d)) - 2.0 / (d + 1.0)) <=
          1e-10);
  }

  // Lifted trines at alpha = 1/40 under the six-outcome measurement.
  CHECK(achievable_fidelity(lifted_trine(1.0 / 40.0), shor_trine(1.0 / 40.0)) ==
        doctest::Approx(0.79999).epsilon(3e-4));
}

TEST_CASE("optimal resynthesis and average fidelity") {
  // Matching projective measurement on an orthogonal pair resynthesizes the
  // signals themselves.
  const Ensemble pair = two_state(kPi / 2.0, 0.3);
  const Strategy s = optimal_resynthesis(pair, von_neumann({pair.state(0), pair.state(1)}));
  CHECK(overlap(s.resynthesis(0), pair.state(0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(overlap(s.resynthesis(1), pair.state(1)) == doctest::Approx(1.0).epsilon(1e-12));

  // Covariant orbit on a Platonic source: resynthesis follows the orbit.
  const Ensemble ico = platonic(PlatonicSolid::icosahedron);
  const Povm cov = group_covariant(PureState::basis(2, 0),
                                   platonic_rotations(PlatonicSolid::icosahedron));
  const Strategy sc = optimal_resynthesis(ico, cov);
  for (int g = 0; g < ico.size(); ++g) {
    CHECK(overlap(sc.resynthesis(g), ico.state(g)) == doctest::Approx(1.0).epsilon(1e-10));
  }

  // Consistency: the optimal strategy achieves the formula value.
  Rng rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const Ensemble e = random_ensemble(2 + trial % 2, 3, rng);
    const Povm p = random_rank1_povm(e.dim(), e.dim() * e.dim(), rng);
    const double f = achievable_fidelity(e, p);
    CHECK(average_fidelity(e, optimal_resynthesis(e, p)) ==
          doctest::Approx(f).epsilon(1e-10));
  }

  // Resynthesis orthogonal to every signal scores zero.
  const Ensemble planar = lifted_trine(0.0);
  const Povm id3 = identity_povm(3);
  const Strategy bad(id3, {PureState::basis(3, 2)});
  CHECK(average_fidelity(planar, bad) == doctest::Approx(0.0).epsilon(1e-14));

  // Helstrom strategy reproduces the two-state closed form.
  const Ensemble e45 = two_state(kPi / 4.0, 0.0);
  const Strategy hs = optimal_resynthesis(e45, helstrom(e45));
  CHECK(average_fidelity(e45, hs) ==
        doctest::Approx(two_state_accessible(kPi / 4.0, 0.0)).epsilon(1e-10));
}

TEST_CASE("posterior") {
  const Ensemble pair = two_state(kPi / 2.0, 0.3);
  const auto point = posterior(pair, von_neumann({pair.state(0), pair.state(1)}), 0);
  CHECK(point[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(point[1] == doctest::Approx(0.0).epsilon(1e-12));

  const Ensemble e = two_state(0.8, 0.4);
  const auto flat = posterior(e, identity_povm(2), 0);
  CHECK(flat[0] == doctest::Approx(e.prior(0)).epsilon(1e-12));
  CHECK(flat[1] == doctest::Approx(e.prior(1)).epsilon(1e-12));

  // Outcome probabilities under Helstrom match the spectral expression
  // (sqrt(P^2 cos^2 t + sin^2 t) -+ P) / (2 sqrt(P^2 cos^2 t + sin^2 t)).
  for (double theta : {0.5, 1.2}) {
    for (double skew : {0.2, 0.6}) {
      const Ensemble g = two_state(theta, skew);
      const Povm h = helstrom(g);
      const HermitianOperator rho = density_operator(g);
      const double nu = std::sqrt(skew * skew * std::cos(theta) * std::cos(theta) +
                                  std::sin(theta) * std::sin(theta));
      const double p_plus = (nu - skew) / (2.0 * nu);
      const double p_minus = (nu + skew) / (2.0 * nu);
      const double q0 = trace_product(rho, h.element(0));
      const double q1 = trace_product(rho, h.element(1));
      CHECK(std::min(q0, q1) == doctest::Approx(std::min(p_plus, p_minus)).epsilon(1e-10));
      CHECK(std::max(q0, q1) == doctest::Approx(std::max(p_plus, p_minus)).epsilon(1e-10));
      // Posteriors are normalized.
      for (int b = 0; b < 2; ++b) {
        const auto post = posterior(g, h, b);
        CHECK(post[0] + post[1] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(post[0] >= 0.0);
      }
    }
  }

  // The off-support outcome of a subspace ensemble never fires.
  const Ensemble planar = lifted_trine(0.0);
  const Povm s = srm(planar);
  REQUIRE(s.size() == 4);
  CHECK_THROWS_AS(posterior(planar, s, 3), std::domain_error);
}

TEST_CASE("success probability") {
  const Ensemble e = two_state(0.9, 0.5);
  CHECK(success_probability(e, identity_povm(2)) ==
        doctest::Approx(0.75).epsilon(1e-12));  // the prior mode

  for (double theta : {0.4, 1.0, kPi / 2.0}) {
    const Ensemble g = two_state(theta, 0.0);
    const double x = std::cos(theta);
    CHECK(success_probability(g, helstrom(g)) ==
          doctest::Approx(helstrom_success(std::abs(x))).epsilon(1e-12));
  }

  const Ensemble pair = two_state(kPi / 2.0, 0.0);
  CHECK(success_probability(pair, von_neumann({pair.state(0), pair.state(1)})) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("srm lower bound") {
  // Two routes to the same number: the printed expression and the POVM
  // evaluation.
  Rng rng(91);
  std::vector<Ensemble> ensembles = {two_state(0.7, 0.2),   real_symmetric(4),
                                     lifted_trine(0.025),   lifted_trine(0.6),
                                     platonic(PlatonicSolid::icosahedron),
                                     sic_ensemble(3),       random_ensemble(3, 4, rng)};
  for (const Ensemble& e : ensembles) {
    CHECK(std::abs(srm_lower_bound(e) - achievable_fidelity(e, srm(e))) <= 1e-10);
  }

  CHECK(srm_lower_bound(lifted_trine(1.0 / 40.0)) ==
        doctest::Approx(0.84766).epsilon(2e-5));
  CHECK(srm_lower_bound(two_state(kPi / 2.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-12));

  // Against the closed form on a grid.
  for (double alpha : {0.0, 0.1, 0.3, 1.0 / 3.0, 0.5, 0.7, 0.9, 1.0}) {
    CHECK(std::abs(srm_lower_bound(lifted_trine(alpha)) - trine_srm(alpha)) <= 1e-10);
  }
}

TEST_CASE("lambda max bound") {
  CHECK(lambda_max_bound(real_symmetric(5)) == doctest::Approx(0.5).epsilon(1e-12));
  for (double theta : {0.3, 1.0, 1.5}) {
    CHECK(lambda_max_bound(two_state(theta, 0.0)) ==
          doctest::Approx(0.5 * (1.0 + std::cos(theta))).epsilon(1e-12));
  }
  Rng rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    const Ensemble e = random_ensemble(2 + trial % 3, 3, rng);
    CHECK(lambda_max_bound(e) >= 1.0 / e.dim() - 1e-12);
  }
}

TEST_CASE("success probability never beats achievable fidelity") {
  Rng rng(501);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 3;
    const Ensemble e = random_ensemble(d, 2 + trial % 4, rng);
    const Povm p = trial % 2 == 0 ? random_rank1_povm(d, d * d, rng)
                                  : random_von_neumann(d, rng);
    CHECK(success_probability(e, p) <= achievable_fidelity(e, p) + 1e-12);
  }
}

TEST_CASE("identity measurement attains the density bound") {
  Rng rng(733);
  for (int trial = 0; trial < 10; ++trial) {
    const Ensemble e = random_ensemble(2 + trial % 3, 3, rng);
    CHECK(std::abs(achievable_fidelity(e, identity_povm(e.dim())) - lambda_max_bound(e)) <=
          1e-12);
  }
}

TEST_CASE("fidelity is convex over measurements") {
  Rng rng(811);
  for (int trial = 0; trial < 8; ++trial) {
    const int d = 2 + trial % 2;
    const Ensemble e = random_ensemble(d, 3, rng);
    const Povm p = random_rank1_povm(d, 3, rng);
    const Povm q = random_von_neumann(d, rng);
    const double w = rng.uniform(0.1, 0.9);

    // Label-keeping mixture (concatenation): exactly the convex combination.
    std::vector<HermitianOperator> cat;
    for (const HermitianOperator& el : p.elements()) cat.push_back(w * el);
    for (const HermitianOperator& el : q.elements()) cat.push_back((1.0 - w) * el);
    const double mixed = achievable_fidelity(e, Povm(d, cat));
    const double convex =
        w * achievable_fidelity(e, p) + (1.0 - w) * achievable_fidelity(e, q);
    CHECK(mixed == doctest::Approx(convex).epsilon(1e-10));

    // Index-aligned element sums can only do worse (subadditivity of the
    // top eigenvalue).
    const int n = std::max(p.size(), q.size());
    std::vector<HermitianOperator> aligned;
    for (int b = 0; b < n; ++b) {
      HermitianOperator el = HermitianOperator::zero(d);
      if (b < p.size()) el = el + w * p.element(b);
      if (b < q.size()) el = el + (1.0 - w) * q.element(b);
      aligned.push_back(el);
    }
    CHECK(achievable_fidelity(e, Povm(d, aligned)) <= convex + 1e-9);
  }
}

TEST_CASE("haar sample under a fixed basis measurement approaches 2/3") {
  const int n = 20000;
  const Ensemble e = haar_sample(2, n, 4242);
  const Povm p = von_neumann({PureState::basis(2, 0), PureState::basis(2, 1)});

  // i.i.d. per-state contributions give the sampling scale.
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double fi = 0.0;
    for (int b = 0; b < 2; ++b) {
      const double q = p.element(b).expectation(e.state(i));
      fi += q * q;  // resynthesis along the measured basis ray
    }
    sum += fi;
    sum2 += fi * fi;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum2 - n * mean * mean) / (n - 1.0) / n);
  CHECK(std::abs(achievable_fidelity(e, p) - 2.0 / 3.0) <= 3.0 * se);
}
