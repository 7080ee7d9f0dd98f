#include <doctest.h>

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "helpers.hpp"
#include "katolab/adiabatic.hpp"
#include "katolab/quadrature.hpp"

using namespace katolab;
using testing::error_of;

namespace {

constexpr double kPi = std::numbers::pi;

OperatorPath constant_path() { return paths::constant(testing::diag({-1.0, 0.5, 2.0}), 0); }

}  // namespace

TEST_CASE("generator of a constant path vanishes") {
  CHECK(max_abs(kato_generator(constant_path(), 0.3).matrix()) < 1e-12);
}

TEST_CASE("generator of the rotating two-level path") {
  const auto path = paths::two_level_rotation();
  for (double s : {0.1, 0.4, 0.8}) {
    const auto a = kato_generator(path, s);
    CHECK(norm2(a.matrix()) == doctest::Approx(kPi / 2).epsilon(1e-7));
    CHECK(std::abs(a.matrix().trace()) < 1e-10);
  }
  const auto three = paths::three_level(0.5);
  CHECK(std::abs(kato_generator(three, 0.5).matrix().trace()) < 1e-10);
}

TEST_CASE("band collision is refused") {
  OperatorPath crossing;
  crossing.H = [](double s) { return testing::diag({s - 0.5, 0.5 - s}); };
  CHECK(error_of([&] { band_projector(crossing, 0.5); }) == "band collision");
}

TEST_CASE("transport along a constant path is trivial") {
  const auto t = kato_transport(constant_path(), 50);
  for (const auto& w : t.W) CHECK(max_abs(w - CMatrix::Identity(3, 3)) < 1e-12);
}

TEST_CASE("transport intertwines the projections") {
  const auto t = kato_transport(paths::two_level_rotation(), 2000);
  CHECK(t.intertwining_defect <= 1e-8);
  CHECK(t.unitarity_defect <= 1e-8);

  const auto loop = paths::bloch_loop(kPi / 2);
  const auto tl = kato_transport(loop, 2000);
  const CMatrix p0 = band_projector(loop, 0.0).P;
  CHECK(norm2(tl.W.back() * p0 * tl.W.back().adjoint() - p0) < 1e-8);
}

TEST_CASE("intertwining defect falls at the integrator order") {
  // A fixed fine derivative step, so the finite-difference error stays below the RK4 error.
  auto path = paths::two_level_rotation();
  path.derivative_step = 1e-6;
  const double coarse = kato_transport(path, 20).intertwining_defect;
  const double fine = kato_transport(path, 40).intertwining_defect;
  CHECK(std::log2(coarse / fine) == doctest::Approx(4.0).epsilon(0.15));
  CHECK(kato_transport(paths::two_level_rotation(), 2000).intertwining_defect <= 1e-8);
}

TEST_CASE("schrodinger evolution") {
  const auto h0 = testing::diag({-1.0, 0.5, 2.0});
  const auto u = schrodinger_evolve(paths::constant(h0), 3.0, 100);
  const double s = 0.5;
  const CMatrix expected = (Complex(0, -s * 3.0) * h0.matrix()).exp();
  CHECK(max_abs(u[50] - expected) < 1e-8);

  for (const auto& v : schrodinger_evolve(paths::two_level_rotation(), 0.0, 10))
    CHECK(max_abs(v - CMatrix::Identity(2, 2)) < 1e-14);

  const auto path = paths::two_level_rotation();
  for (int steps : {2000, 4000}) {
    double worst = 0.0;
    for (const auto& v : schrodinger_evolve(path, 50.0, steps))
      worst = std::max(worst, max_abs(v.adjoint() * v - CMatrix::Identity(2, 2)));
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("adiabatic defect") {
  CHECK(adiabatic_defect(constant_path(), 40.0, 400) <= 1e-8);

  const auto path = paths::two_level_rotation();
  RVector ts(3), d(3);
  ts << 25, 50, 100;
  for (Index i = 0; i < 3; ++i) d(i) = adiabatic_defect(path, ts(i), 4000);
  CHECK(d(0) / d(1) == doctest::Approx(2.0).epsilon(0.2));
  CHECK(d(1) / d(2) == doctest::Approx(2.0).epsilon(0.2));
  CHECK(loglog_slope(ts, d) == doctest::Approx(-1.0).epsilon(0.15));

  // No time to follow: the raw overlap of P(0) with the final complement.
  CHECK(adiabatic_defect(path, 1e-9, 200) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("transport tracks the band-shifted evolution to O(1/T)") {
  const auto path = paths::two_level_rotation();
  RVector ts(3), m(3);
  ts << 25, 50, 100;
  for (Index i = 0; i < 3; ++i) m(i) = transport_mismatch(path, ts(i), 4000);
  CHECK(loglog_slope(ts, m) == doctest::Approx(-1.0).epsilon(0.15));
}

TEST_CASE("berry phase") {
  CHECK(std::abs(berry_phase(paths::constant(testing::pauli_z()), 100)) < 1e-12);

  const auto loop = paths::bloch_loop(1.0);
  const double coarse = berry_phase(loop, 2000);
  const double fine = berry_phase(loop, 4000);
  CHECK(std::abs(coarse - fine) < 1e-6);
  CHECK(fine == doctest::Approx(-1.4441828987568201).epsilon(1e-8));

  CHECK(std::abs(berry_phase(paths::retraced(loop), 2000)) < 1e-8);

  // Reference vector gauge.
  const CVector v0 = eig(loop.H(0.0)).vectors.col(loop.band);
  const double rotated = berry_phase(loop, 2000, CVector(v0 * std::polar(1.0, 0.7)));
  CHECK(std::abs(rotated - coarse) < 1e-9);

  // Colatitudes across the sphere, up to 2 pi.
  for (double theta : {0.3, 2.0, 2.8}) {
    double expected = -kPi * (1.0 - std::cos(theta));
    expected = std::remainder(expected, 2 * kPi);
    const double got = berry_phase(paths::bloch_loop(theta), 2000);
    CHECK(std::abs(std::remainder(got - expected, 2 * kPi)) < 1e-6);
  }
}

TEST_CASE("berry phase errors") {
  CHECK(error_of([] { berry_phase(paths::two_level_rotation(), 100); }) == "path not closed");
  auto wide = paths::constant(testing::diag({0.0, 0.0, 2.0}));
  wide.band_size = 2;
  CHECK(error_of([&] { berry_phase(wide, 100); }) == "holonomy is a matrix: use kato_transport");
}

TEST_CASE("reparametrization keeps the transport endpoint") {
  const auto path = paths::three_level(0.5);
  const auto slow = paths::reparametrized(path, [](double s) { return s * s; });
  const CMatrix a = kato_transport(path, 400).W.back();
  const CMatrix b = kato_transport(slow, 400).W.back();
  CHECK(max_abs(a - b) < 1e-6);
}
