#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "katolab/asymptotics.hpp"
#include "katolab/experiment.hpp"
#include "katolab/quadrature.hpp"
#include "oracle_values.hpp"

using namespace katolab;
using testing::error_of;

TEST_CASE("power series arithmetic") {
  const PowerSeries one_minus_z({1.0, -1.0, 0.0, 0.0});
  const auto prod = PowerSeries::geometric(3) * one_minus_z;
  CHECK(prod[0] == 1.0);
  for (int n = 1; n <= 3; ++n) CHECK(prod[n] == 0.0);
  CHECK(PowerSeries::euler(4)[3] == -6.0);
  CHECK(PowerSeries::exponential(4)[4] == doctest::Approx(1.0 / 24));
  CHECK(PowerSeries::geometric(5, 0.5)(1.0) == doctest::Approx(1.96875));
  CHECK(PowerSeries::zero(3).is_zero());
}

TEST_CASE("pade examples") {
  const auto inv = pade(PowerSeries({1, -1, 1, -1}), 1, 0);
  CHECK(inv(1.0) == doctest::Approx(0.5));
  CHECK(inv(0.3) == doctest::Approx(1.0 / 1.3));

  const auto e = pade(PowerSeries::exponential(4), 1, 1);
  CHECK(e(1.0) == doctest::Approx(3.0));
  CHECK(e.q[1] == doctest::Approx(-0.5));
  CHECK(e.p[1] == doctest::Approx(0.5));

  const auto z = pade(PowerSeries::zero(6), 3, 3);
  CHECK(z(0.7) == 0.0);

  CHECK(error_of([] { pade(PowerSeries({1, 0, 0, 0}), 1, 1); }) == "Pade block degeneracy");
}

TEST_CASE("pade contact conditions") {
  // The quartic series is left out: rounding its exact [8,8] coefficients to
  // double already moves the reconstructed Taylor coefficients by ~1e-5.
  for (const auto& [series, n] : {std::pair{PowerSeries::exponential(12), 4}, std::pair{PowerSeries::exponential(12), 6},
                                  std::pair{PowerSeries::euler(12), 3}, std::pair{PowerSeries::euler(12), 5}}) {
    const auto r = pade(series, n, n);
    const auto t = r.taylor(2 * n);
    for (int k = 0; k <= 2 * n; ++k)
      CHECK(std::abs(t[static_cast<std::size_t>(k)] - series[k]) <= 1e-10 * std::max(1.0, std::abs(series[k])));
  }
}

TEST_CASE("quartic coefficients match the exact rational recursion") {
  const auto a = bender_wu(25, 108);
  CHECK(a[1] == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(a[2] == doctest::Approx(-21.0 / 16).epsilon(1e-14));
  for (int n = 0; n <= 25; ++n) CHECK(a[n] == doctest::Approx(oracle::quartic_coeff[n]).epsilon(1e-12));
  CHECK(std::abs(bender_wu_ratio(a[25], 25) - 1.0) <= 0.10);
  CHECK(bender_wu_exact(3, 20)[3].rfind("5.203125", 0) == 0);
  CHECK(error_of([] { bender_wu(10, 20); }) == "truncation contaminates order N");
}

TEST_CASE("large-order prediction") {
  CHECK(bender_wu_asymptotic(1).value() == doctest::Approx(oracle::bender_wu_large_order_n1).epsilon(1e-13));
  for (int n = 1; n < 40; ++n) CHECK(bender_wu_asymptotic(n).sign * bender_wu_asymptotic(n + 1).sign == -1);
  const double n = 200.0;
  const double ratio = std::exp(bender_wu_asymptotic(201).log_magnitude - bender_wu_asymptotic(200).log_magnitude);
  CHECK(ratio / (1.5 * (n + 0.5)) == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(std::isinf(bender_wu_asymptotic(400).value()));
}

TEST_CASE("diagonal pade of the quartic series converges") {
  const PowerSeries series(std::vector<double>(oracle::quartic_coeff, oracle::quartic_coeff + 19));
  const double beta = 0.1;
  CHECK(pade(series, 8, 8)(beta) == doctest::Approx(oracle::quartic_pade_8_8_at_0p1).epsilon(1e-9));
  CHECK(std::abs(pade(series, 8, 8)(beta) - oracle::quartic_ground_at_0p1) <= 1e-3);
  double prev = std::abs(pade(series, 3, 3)(beta) - pade(series, 4, 4)(beta));
  for (int n = 4; n <= 8; ++n) {
    const double diff = std::abs(pade(series, n, n)(beta) - pade(series, n + 1, n + 1)(beta));
    CHECK(diff < prev);
    prev = diff;
  }
}

TEST_CASE("borel sums") {
  CHECK(borel_sum(PowerSeries::euler(30), 1.0).value == doctest::Approx(oracle::euler_borel_at_1).epsilon(1e-5));
  const auto geo = borel_sum(PowerSeries::geometric(40), 0.5);
  CHECK(std::abs(geo.value - 2.0) <= 1e-8);
  CHECK(geo.error_estimate <= 1e-8);
  CHECK(borel_sum(PowerSeries::zero(10), 0.5).value == 0.0);
  CHECK(borel_sum(PowerSeries::exponential(30), 0.7).value == doctest::Approx(std::exp(0.7)).epsilon(1e-8));
  CHECK(borel_sum(PowerSeries::exponential(30), 0.7, 1, Continuation::taylor).value ==
        doctest::Approx(std::exp(0.7)).epsilon(1e-8));
  // Order two: a_n = (-1)^n (2n)! / n! has transform e^{-w}.
  std::vector<double> c(24);
  for (int n = 0; n < 24; ++n) c[static_cast<std::size_t>(n)] = (n % 2 ? -1 : 1) * std::tgamma(2 * n + 1) / std::tgamma(n + 1);
  CHECK(borel_sum(PowerSeries(c), 0.05, 2).value == doctest::Approx(oracle::borel_order2_at_0p05).epsilon(1e-6));
}

TEST_CASE("stieltjes moment test") {
  for (const auto s : hankel_stieltjes_test(PowerSeries::euler(10), 4)) CHECK(s == HankelStatus::positive_definite);
  const auto ones = hankel_stieltjes_test(PowerSeries::geometric(6), 3);
  CHECK(ones[0] == HankelStatus::positive_definite);
  CHECK(ones[1] != HankelStatus::positive_definite);
  const auto point = hankel_stieltjes_test(PowerSeries({1, 0, 0, 0, 0}), 2);
  CHECK(point[1] == HankelStatus::semidefinite);
  CHECK(to_string(HankelStatus::indefinite) == "indefinite");
}

TEST_CASE("gauss-laguerre rule") {
  const auto rule = gauss_laguerre(4);
  for (int i = 0; i < 4; ++i) {
    CHECK(rule.nodes(i) == doctest::Approx(oracle::laguerre4_nodes[i]).epsilon(1e-13));
    CHECK(rule.weights(i) == doctest::Approx(oracle::laguerre4_weights[i]).epsilon(1e-12));
  }
}

TEST_CASE("lie-trotter error") {
  CHECK(lie_trotter_error(testing::diag({1, 2}), testing::diag({-1, 3}), 1.0, 3) <= 1e-12);
  const double e8 = lie_trotter_error(testing::pauli_x(), testing::pauli_z(), 1.0, 8);
  const double e16 = lie_trotter_error(testing::pauli_x(), testing::pauli_z(), 1.0, 16);
  CHECK(e8 == doctest::Approx(oracle::trotter_sx_sz_n8).epsilon(1e-10));
  CHECK(e16 == doctest::Approx(oracle::trotter_sx_sz_n16).epsilon(1e-10));
  CHECK(e8 / e16 >= 1.8);
  CHECK(e8 / e16 <= 2.2);

  RVector ns(6);
  ns << 16, 32, 64, 128, 256, 512;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(seed);
    const auto a = random_hermitian(4, rng);
    const auto b = random_hermitian(4, rng);
    RVector err(6);
    for (Index i = 0; i < 6; ++i) err(i) = lie_trotter_error(a, b, 1.0, static_cast<int>(ns(i)));
    CHECK(loglog_slope(ns, err) == doctest::Approx(-1.0).epsilon(0.1));
  }
}

TEST_CASE("alternating projections") {
  const auto p = OrthogonalProjection::from_matrix(testing::diag({1, 1, 0}).matrix());
  const auto same = alternating_projection_limit(p, p, 5);
  CHECK(same.distance < 1e-14);
  CHECK(max_abs(same.power - p.matrix()) < 1e-14);

  const double theta = 0.3;
  CMatrix line(2, 1);
  line << std::cos(theta), std::sin(theta);
  const auto q = OrthogonalProjection::onto_span(line);
  const auto x = OrthogonalProjection::from_matrix(testing::diag({1, 0}).matrix());
  const auto d = alternating_projection_distances(x, q, 200);
  for (int n = 1; n <= 200; n += 37)
    CHECK(d[static_cast<std::size_t>(n - 1)] == doctest::Approx(std::pow(std::cos(theta), 2 * n - 1)).epsilon(1e-9));
  for (std::size_t i = 1; i < d.size(); ++i) CHECK(d[i] <= d[i - 1] + 1e-15);
  CHECK(d.back() <= 1e-6);

  // Shared e1 plus lines at an angle in the (e2, e3) plane.
  CMatrix pc(3, 2), qc(3, 2);
  pc << 1, 0, 0, 1, 0, 0;
  qc << 1, 0, 0, std::cos(0.5), 0, std::sin(0.5);
  const auto lim = alternating_projection_limit(OrthogonalProjection::onto_span(pc), OrthogonalProjection::onto_span(qc), 300);
  CHECK(max_abs(lim.limit - testing::diag({1, 0, 0}).matrix()) < 1e-10);
  CHECK(lim.distance < 1e-10);
}
