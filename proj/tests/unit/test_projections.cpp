#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "katolab/experiment.hpp"
#include "katolab/projections.hpp"

using namespace katolab;
using testing::error_of;

namespace {

OrthogonalProjection proj(std::initializer_list<double> d) {
  return OrthogonalProjection::from_matrix(testing::diag(d).matrix());
}

OrthogonalProjection diagonal_line() {
  CMatrix v(2, 1);
  v << 1, 1;
  return OrthogonalProjection::onto_span(v);
}

OrthogonalProjection random_projection(Index n, Index k, Rng& rng) {
  return OrthogonalProjection::onto_span(random_complex(n, k, rng));
}

/// Rank-k pair whose ranges are close: Q spans P's basis plus `noise`.
std::pair<OrthogonalProjection, OrthogonalProjection> near_pair(Index n, Index k, double noise, Rng& rng) {
  const CMatrix x = random_complex(n, k, rng);
  return {OrthogonalProjection::onto_span(x), OrthogonalProjection::onto_span(x + noise * random_complex(n, k, rng))};
}

CMatrix identity(Index n) { return CMatrix::Identity(n, n); }

}  // namespace

TEST_CASE("pair of equal projections") {
  const auto p = proj({1, 1, 0, 0});
  const auto pair = projection_pair(p, p);
  CHECK(max_abs(pair.A.matrix()) == 0.0);
  CHECK(max_abs(pair.B.matrix() - (identity(4) - 2.0 * p.matrix())) < 1e-15);
  CHECK(max_abs(pair.B.matrix() * pair.B.matrix() - identity(4)) < 1e-15);
  CHECK(max_abs(kato_unitary(pair) - identity(4)) < 1e-14);
  CHECK(max_abs(sgn_unitary(pair) - (identity(4) - 2.0 * p.matrix())) < 1e-14);
  CHECK(trace_index(pair) == 0);
  CHECK(halmos(pair).generic_rank() == 0);

  const auto sym = spectral_symmetry(projection_pair(proj({1, 0}), proj({1, 0})));
  REQUIRE(sym.size() == 1);
  CHECK(sym[0].lambda == doctest::Approx(0.0));
}

TEST_CASE("line and diagonal in the plane") {
  const auto pair = projection_pair(proj({1, 0}), diagonal_line());
  CHECK(pair.normPQ == doctest::Approx(1.0 / std::sqrt(2.0)));

  const CMatrix u = kato_unitary(pair);
  const double c = 1.0 / std::sqrt(2.0);
  CMatrix rot(2, 2);
  rot << c, -c, c, c;
  CHECK(max_abs(u - rot) < 1e-12);

  const CMatrix s = sgn_unitary(pair);
  CMatrix refl(2, 2);
  refl << -c, -c, -c, c;
  CHECK(max_abs(s - refl) < 1e-12);
  CHECK(max_abs(s * s - identity(2)) < 1e-12);
  CHECK(max_abs(s * pair.P.matrix() * s - pair.Q.matrix()) < 1e-12);

  const auto sym = spectral_symmetry(pair);
  REQUIRE(sym.size() == 2);
  CHECK(sym[0].lambda == doctest::Approx(-c));
  CHECK(sym[1].lambda == doctest::Approx(c));
  CHECK(sym[1].dim_plus == 1);
  CHECK(sym[1].dim_minus == 1);
}

TEST_CASE("pair validation") {
  CHECK(error_of([] { projection_pair(proj({1, 0}), proj({1, 0, 0})); }) == "not a projection pair: dimension mismatch");
  CHECK(error_of([] { kato_unitary(projection_pair(proj({1, 0}), proj({0, 1}))); }) == "projections not norm-close");
  CHECK(error_of([] { sgn_unitary(projection_pair(proj({1, 0}), proj({0, 1}))); }) == "B is singular");
}

TEST_CASE("trace index") {
  CHECK(trace_index(projection_pair(proj({1, 1, 1, 0}), proj({1, 0, 0, 0}))) == 2);
  CHECK(trace_index(projection_pair(proj({1, 0}), proj({0, 1}))) == 0);
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_projection(6, 2, rng);
    const auto q = random_projection(6, 2, rng);
    CHECK(trace_index(projection_pair(p, q)) == 0);
    CHECK(trace_index(projection_pair(random_projection(6, 3, rng), q)) == 1);
  }
}

TEST_CASE("corner subspaces follow the definitions") {
  // ran P in ker Q, ran Q in ker P, and e3 in both kernels.
  const auto c = corner_subspaces(proj({1, 0, 0}), proj({0, 1, 0}));
  CHECK(c.p_kerq == 1);
  CHECK(c.kerp_q == 1);
  CHECK(c.p_q == 0);
  CHECK(c.kerq_kerp == 1);

  // P = Q of rank k in dimension n: ran P meets ran Q in k dimensions and the kernels in n - k.
  const auto same = corner_subspaces(proj({1, 1, 0, 0, 0}), proj({1, 1, 0, 0, 0}));
  CHECK(same.p_kerq == 0);
  CHECK(same.kerp_q == 0);
  CHECK(same.p_q == 2);
  CHECK(same.kerq_kerp == 3);

  Rng rng(23);
  const auto generic = corner_subspaces(random_projection(6, 3, rng), random_projection(6, 3, rng));
  CHECK(generic.generic());
  CHECK(generic.margin > 1e-6);
}

TEST_CASE("symmetry conjugator") {
  const CMatrix swap = symmetry_conjugator(projection_pair(proj({1, 0}), proj({0, 1})));
  CHECK(max_abs(swap - testing::pauli_x().matrix()) < 1e-12);
  CHECK(error_of([] { symmetry_conjugator(projection_pair(proj({1, 1, 0}), proj({1, 0, 0}))); }) ==
        "no symmetry: corner dimensions differ");

  Rng rng(29);
  const auto pair = projection_pair(random_projection(6, 3, rng), random_projection(6, 3, rng));
  const CMatrix u = symmetry_conjugator(pair);
  CHECK(max_abs(u - u.adjoint()) < 1e-9);
  CHECK(max_abs(u * u - identity(6)) < 1e-9);
  CHECK(max_abs(u * pair.P.matrix() * u - pair.Q.matrix()) < 1e-9);
  CHECK(max_abs(u * pair.Q.matrix() * u - pair.P.matrix()) < 1e-9);
}

TEST_CASE("halmos decomposition of random pairs") {
  Rng rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const auto pair = projection_pair(random_projection(8, 3, rng), random_projection(8, 4, rng));
    const auto h = halmos(pair);
    CHECK(h.reconstruction_residual <= 1e-8);
    const Index g = h.generic_rank();
    CHECK(g > 0);
    CHECK(max_abs(h.c * h.c + h.s * h.s - CMatrix::Identity(g, g)) < 1e-9);
    CHECK(max_abs(h.c * h.s - h.s * h.c) < 1e-9);
  }
}

TEST_CASE("oblique projections") {
  const auto orth = oblique_norms(testing::diag({1, 0, 0}).matrix());
  CHECK(orth.norm_pi == doctest::Approx(1.0));
  CHECK(orth.norm_complement == doctest::Approx(1.0));
  CHECK(orth.cos_angle == doctest::Approx(0.0));

  const double t = 0.7;
  CMatrix pi(2, 2);
  pi << 1, t, 0, 0;
  const auto o = oblique_norms(pi);
  CHECK(o.norm_pi == doctest::Approx(std::sqrt(1 + t * t)));
  CHECK(o.norm_complement == doctest::Approx(std::sqrt(1 + t * t)));
  CHECK(o.ljance == doctest::Approx(o.norm_pi).epsilon(1e-8));

  CHECK(error_of([] { oblique_norms(CMatrix::Zero(3, 3)); }) == "trivial projection excluded");
  CHECK(error_of([] { oblique_norms(identity(3)); }) == "trivial projection excluded");

  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix x = random_complex(6, 6, rng) + 3.0 * identity(6);
    RVector d = RVector::Zero(6);
    d.head(1 + trial % 5).setOnes();
    const CMatrix p = x * d.cast<Complex>().asDiagonal() * x.inverse();
    const auto n = oblique_norms(p);
    CHECK(std::abs(n.norm_pi - n.norm_complement) <= 1e-9 * n.norm_pi);
    CHECK(std::abs(n.ljance - n.norm_pi) <= 1e-8 * n.norm_pi);
  }
}

TEST_CASE("pair identities on 100 seeded pairs") {
  Rng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 6;
    const Index k = 1 + trial % 4;
    const auto [p, q] = trial % 2 ? near_pair(n, k, 0.15, rng)
                                  : std::pair{random_projection(n, k, rng), random_projection(n, k, rng)};
    const auto pair = projection_pair(p, q);
    const CMatrix& a = pair.A.matrix();
    const CMatrix& b = pair.B.matrix();
    const CMatrix& pm = p.matrix();
    const CMatrix& qm = q.matrix();
    const CMatrix id = identity(n);
    CHECK(max_abs(a * a + b * b - id) <= 1e-10);
    CHECK(max_abs(a * b + b * a) <= 1e-10);
    CHECK(max_abs(a * a * pm - pm * a * a) <= 1e-10);
    CHECK(max_abs(a * a * qm - qm * a * a) <= 1e-10);

    const CMatrix comm = pm * qm - qm * pm;
    CHECK(max_abs(comm * comm - (a * a * a * a - a * a)) <= 1e-9);
    const CMatrix w = qm * pm + (id - qm) * (id - pm);
    const CMatrix wt = pm * qm + (id - pm) * (id - qm);
    CHECK(max_abs(w * wt - (id - a * a)) <= 1e-9);

    if (pair.normPQ < 1.0 - 1e-6) {
      const CMatrix u = kato_unitary(pair);
      CHECK(norm2(u * pm * u.adjoint() - qm) <= 1e-9);
      CHECK(max_abs(u.adjoint() * u - id) <= 1e-9);
      const CMatrix s = sgn_unitary(pair);
      CHECK(norm2(s * pm * s - qm) <= 1e-9);
      CHECK(norm2(s * qm * s - pm) <= 1e-9);
    }

    // Simultaneous unitary conjugation leaves the index alone.
    const CMatrix v = Eigen::HouseholderQR<CMatrix>(random_complex(n, n, rng)).householderQ();
    const auto moved = projection_pair(OrthogonalProjection::from_matrix(v * pm * v.adjoint()),
                                       OrthogonalProjection::from_matrix(v * qm * v.adjoint()));
    CHECK(trace_index(moved) == trace_index(pair));
    const double tr = (pm - qm).trace().real();
    CHECK(std::abs(tr - std::round(tr)) <= 1e-8);
  }
}
