#include "katolab/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include "katolab/error.hpp"
#include "katolab/tridiagonal.hpp"

namespace katolab {

namespace {

constexpr double kPi = std::numbers::pi;

// x - sin x without cancellation for small x.
double x_minus_sin(double x) {
  if (std::abs(x) > 0.5) return x - std::sin(x);
  const double x2 = x * x;
  double term = x * x2 / 6.0;
  double sum = 0.0;
  for (int k = 1; k < 12; ++k) {
    sum += term;
    term *= -x2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
  }
  return sum;
}

// Taylor coefficients of V at r^4, r^6, ..., r^14.
constexpr double kWvnSeries[] = {
    -224.0 / 3.0,          2624.0 / 45.0,        -1952.0 / 105.0,
    5155648.0 / 14175.0, -26723648.0 / 66825.0, 2963868032.0 / 14189175.0,
};

double integrate_gk(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-12);
}

}  // namespace

double wvn_phase(double r) { return x_minus_sin(2.0 * r); }

double wvn_eigenfunction(double r) {
  const double g = wvn_phase(r);
  return std::sin(r) / (1.0 + g * g);
}

double wvn_eigenfunction_d2(double r) {
  const double s = std::sin(r), c = std::cos(r);
  const double g = wvn_phase(r);
  const double g1 = 4.0 * s * s;
  const double g2 = 4.0 * std::sin(2.0 * r);
  const double d = 1.0 + g * g;
  const double d1 = 2.0 * g * g1;
  const double d2 = 2.0 * g1 * g1 + 2.0 * g * g2;
  return -s / d - 2.0 * c * d1 / (d * d) - s * d2 / (d * d) + 2.0 * s * d1 * d1 / (d * d * d);
}

double wvn_potential(double r) {
  require(std::isfinite(r), "radius must be finite");
  r = std::abs(r);  // even in r
  if (r < 1e-3) {
    const double r2 = r * r;
    double p = r2 * r2, v = 0.0;
    for (double c : kWvnSeries) {
      v += c * p;
      p *= r2;
    }
    return v;
  }
  const double s = std::sin(r), c = std::cos(r);
  const double g = wvn_phase(r);
  const double d = 1.0 + g * g;
  const double s4 = s * s * s * s;
  return -32.0 * (g * s * c + s4) / d + 128.0 * g * g * s4 / (d * d);
}

std::vector<double> wvn_potential(const std::vector<double>& r) {
  std::vector<double> out;
  out.reserve(r.size());
  for (double x : r) out.push_back(wvn_potential(x));
  return out;
}

InvertedPotential eigenfunction_to_potential(double x0, double h, const std::vector<double>& psi, double E) {
  require(h > 0.0 && psi.size() >= 3, "need at least three samples on a positive spacing");
  for (double v : psi)
    if (!(v > 0.0)) fail("node in trial eigenfunction");
  InvertedPotential out;
  for (std::size_t i = 1; i + 1 < psi.size(); ++i) {
    out.x.push_back(x0 + static_cast<double>(i) * h);
    out.V.push_back(E + (psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) / (h * h * psi[i]));
  }
  return out;
}

// Coulomb cusp -------------------------------------------------------------

namespace {

struct CuspSample {
  double ratio, energy, reference_error, value;
};

CuspSample cusp_on_grid(double R, Index n, double Z) {
  const Grid1D grid(0.0, R, n);
  const auto h = radial_channel(grid, 3, 0, [Z](double r) { return -Z / r; });
  const auto ground = h.lowest(1);
  const double E = ground.values(0);
  const Eigen::VectorXd u = ground.vectors.col(0);
  const double floor = 1e-10 * u.cwiseAbs().maxCoeff();
  for (Index i = 0; i < u.size(); ++i)
    if (u(i) < -floor) fail("ground-state isolation failed");
  if (!(E < 0.0)) fail("ground-state isolation failed");

  // psi = u / r through the first three nodes: psi ~ a + b r + c r^2.
  const double dx = grid.spacing();
  const double p1 = u(0) / dx, p2 = u(1) / (2 * dx), p3 = u(2) / (3 * dx);
  const double a = 3.0 * p1 - 3.0 * p2 + p3;
  const double b = (-5.0 * p1 + 8.0 * p2 - 3.0 * p3) / (2.0 * dx);
  if (!(a > 0.0)) fail("ground-state isolation failed");

  double err = 0.0;
  for (Index i = 0; i < n && grid.node(i) <= 5.0 / Z; ++i) {
    const double r = grid.node(i);
    err = std::max(err, std::abs(u(i) / (r * a) - std::exp(-0.5 * Z * r)));
  }
  return {b / a, E, err, a};
}

}  // namespace

CuspResult hydrogen_cusp(double R, Index n, double Z, int ell) {
  require(Z > 0.0, "nuclear charge must be positive");
  require(ell >= 0, "invalid channel");
  require(n >= 10 && R > 0.0, "invalid grid");
  CuspResult out;
  out.target = -0.5 * Z;
  out.h = R / static_cast<double>(n + 1);
  out.ell = ell;
  if (ell >= 1) {
    // The spherical average of an ell >= 1 state vanishes identically.
    const Grid1D grid(0.0, R, n);
    const auto h = radial_channel(grid, 3, ell, [Z](double r) { return -Z / r; });
    out.energy = h.lowest_eigenvalues(1)(0);
    return out;
  }
  const auto coarse = cusp_on_grid(R, n, Z);
  const auto fine = cusp_on_grid(R, 2 * n + 1, Z);
  out.ratio = richardson(coarse.ratio, fine.ratio);
  out.energy = coarse.energy;
  out.reference_error = coarse.reference_error;
  out.average_value = 1.0;
  out.average_derivative = out.ratio;
  return out;
}

double quartic_ground_energy(double beta, double L, Index n) {
  require(beta >= 0.0 && L > 0.0 && n >= 10, "invalid grid");
  auto v = [beta](double x) { return x * x + beta * x * x * x * x; };
  const double coarse = discretize_1d(Grid1D(-L, L, n), v).lowest_eigenvalues(1)(0);
  const double fine = discretize_1d(Grid1D(-L, L, 2 * n + 1), v).lowest_eigenvalues(1)(0);
  return richardson(coarse, fine);
}

// Hardy and Rellich ---------------------------------------------------------

namespace {

// Lowest Dirichlet eigenvalue of -d^2/dt^2 on the log grid t in (log r_min, log R).
double log_grid_ground(double R, Index n, double r_min) {
  require(r_min > 0.0 && R > r_min, "invalid grid");
  const Grid1D grid(std::log(r_min), std::log(R), n);
  return discretize_1d(grid, [](double) { return 0.0; }).lowest_eigenvalues(1)(0);
}

}  // namespace

// With u = r^{1/2} w and r = e^t the Hardy quotient becomes
// (||w'||^2 + ((nu - 2)^2 / 4) ||w||^2) / ||w||^2.
double hardy_constant(int nu, double R, Index n, double r_min) {
  require(nu >= 3, "Hardy constant requires nu >= 3");
  const double c = 0.25 * (nu - 2.0) * (nu - 2.0);
  return log_grid_ground(R, n, r_min) + c;
}

// For radial phi = r^{(4 - nu)/2} w(log r) the Laplacian becomes
// r^{-nu/2} (w'' + 2w' - kappa w) with kappa = nu(nu - 4)/4, and for compactly
// supported w the squared norm of that is the form
// ||w''||^2 + (4 + 2 kappa) ||w'||^2 + kappa^2 ||w||^2, minimized by the
// lowest Dirichlet mode.
double rellich_constant(int nu, double R, Index n, double r_min) {
  if (nu < 5) fail("Rellich constant nonpositive regime");
  const double kappa = 0.25 * nu * (nu - 4.0);
  const double lam = log_grid_ground(R, n, r_min);
  return std::sqrt(lam * lam + (4.0 + 2.0 * kappa) * lam + kappa * kappa);
}

// Shell counting -------------------------------------------------------------

ShellCount helium_shells(double mass_ratio) {
  if (std::isnan(mass_ratio) || !(mass_ratio > 0.0)) fail("invalid masses");
  ShellCount out;
  if (std::isinf(mass_ratio)) {
    out.unbounded = true;
    out.alpha = 0.0;
    return out;
  }
  out.alpha = 1.0 / (mass_ratio + 1.0);
  // k < sqrt((1 - alpha) / (4 alpha)) is 4 k^2 < M/m.
  const long double m = mass_ratio;
  long k = static_cast<long>(std::floor(std::sqrt(m) / 2.0L));
  while (k > 0 && 4.0L * k * k >= m) --k;
  while (4.0L * (k + 1) * (k + 1) < m) ++k;
  out.k_max = k;
  out.count = static_cast<long long>(k) * (k + 1) * (2 * k + 1) / 6;
  return out;
}

// Rank-one models ----------------------------------------------------------

RankOneKind rank_one_kind_from_string(const std::string& s) {
  if (s == "inv_sqrt") return RankOneKind::inv_sqrt;
  if (s == "log_case") return RankOneKind::log_case;
  if (s == "inv") return RankOneKind::inv;
  fail("unknown psi kind: " + s);
}

std::string to_string(RankOneKind k) {
  switch (k) {
    case RankOneKind::inv_sqrt: return "inv_sqrt";
    case RankOneKind::log_case: return "log_case";
    case RankOneKind::inv: return "inv";
  }
  return "";
}

namespace {

// |psi(x)|^2 for x >= 0, each normalized on the whole line.
double psi_squared(double x, RankOneKind kind) {
  const double q = 1.0 + x * x;
  switch (kind) {
    case RankOneKind::inv_sqrt: return 1.0 / (kPi * q);
    case RankOneKind::log_case: return x / (q * q);
    case RankOneKind::inv: return 2.0 / (kPi * q * q);
  }
  return 0.0;
}

}  // namespace

double rank_one_secular(double beta, double E, RankOneKind kind) {
  require(beta > 0.0, "beta must be positive");
  require(E < 0.0, "secular function needs E < 0");
  const double a = -E;
  auto inner = [&](double x) { return psi_squared(x, kind) / (beta * x * x + a); };
  // x = 1/t on the tail.
  auto tail = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double x = 1.0 / t;
    return psi_squared(x, kind) / (beta + a * t * t);
  };
  // The denominator turns over at x ~ sqrt(a / beta); split the tail there.
  const double tk = std::min(1.0, std::sqrt(beta / a));
  double total = integrate_gk(inner, 0.0, 1.0) + integrate_gk(tail, 0.0, tk);
  if (tk < 1.0) total += integrate_gk(tail, tk, 1.0);
  return 2.0 * total;
}

double rank_one_eigenvalue(double beta, RankOneKind kind) {
  require(beta > 0.0, "beta must be positive");
  auto g = [&](double E) { return rank_one_secular(beta, E, kind) - 1.0; };
  const double lo = -2.0;
  if (g(lo) >= 0.0) fail("eigenvalue absorbed");
  double hi = -1.0;
  while (g(hi) < 0.0) {
    hi *= 0.5;
    if (hi > -1e-14) fail("eigenvalue absorbed");
  }
  double left = hi == -1.0 ? lo : 2.0 * hi;
  std::uintmax_t iters = 200;
  const auto bracket = boost::math::tools::toms748_solve(
      g, left, hi, boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (bracket.first + bracket.second);
}

double rank_one_inv_sqrt_exact(double beta) {
  require(beta > 0.0, "beta must be positive");
  const double root_a = 0.5 * (std::sqrt(beta + 4.0) - std::sqrt(beta));
  return -root_a * root_a;
}

RankOneFit rank_one_fit(RankOneKind kind, const std::vector<double>& betas) {
  require(betas.size() >= 2, "fit needs at least two beta values");
  RankOneFit fit;
  std::function<double(double)> f1, f2;
  switch (kind) {
    case RankOneKind::inv_sqrt:
      fit.basis = {"beta^1/2", "beta"};
      f1 = [](double b) { return std::sqrt(b); };
      f2 = [](double b) { return b; };
      break;
    case RankOneKind::inv:
      fit.basis = {"beta", "beta^3/2"};
      f1 = [](double b) { return b; };
      f2 = [](double b) { return b * std::sqrt(b); };
      break;
    case RankOneKind::log_case:
      fit.basis = {"beta log beta", "beta"};
      f1 = [](double b) { return b * std::log(b); };
      f2 = [](double b) { return b; };
      break;
  }
  const auto m = static_cast<Index>(betas.size());
  RMatrix a(m, 2);
  RVector y(m);
  for (Index i = 0; i < m; ++i) {
    const double b = betas[static_cast<std::size_t>(i)];
    // Relative weighting so small-beta points count as much as large ones.
    const double w = 1.0 / f1(b);
    a(i, 0) = f1(b) * w;
    a(i, 1) = f2(b) * w;
    y(i) = (rank_one_eigenvalue(b, kind) + 1.0) * w;
  }
  const RVector c = a.colPivHouseholderQr().solve(y);
  fit.coeffs = {c(0), c(1)};
  return fit;
}

// Momentum-space kernel -----------------------------------------------------

namespace {

// log coth(x/2) = 2 atanh(e^{-x}) for x > 0.
double log_coth_half(double x) { return 2.0 * std::atanh(std::exp(-x)); }

}  // namespace

double kato_top_eigenvalue(double k_min, double k_max, Index n_log) {
  require(k_min > 0.0 && k_max > k_min && n_log >= 3, "invalid grid");
  if (k_min > 1e-3 || k_max < 1e3) fail("spectral truncation: widen momentum window");
  const double t0 = std::log(k_min);
  const double dt = (std::log(k_max) - t0) / static_cast<double>(n_log - 1);

  // Cell average of the logarithmic diagonal singularity:
  // int_0^c 2 atanh(e^{-s}) ds = sum over odd k of 2 (1 - e^{-kc}) / k^2.
  const double c = 0.5 * dt;
  long double cell = 0.0L, head = 0.0L;
  long k = 1;
  for (; k * c < 60.0; k += 2) {
    const long double kk = static_cast<long double>(k) * k;
    cell += 2.0L * -std::expm1(-static_cast<long double>(k) * c) / kk;
    head += 1.0L / kk;
  }
  cell += 2.0L * (std::numbers::pi_v<long double> * std::numbers::pi_v<long double> / 8.0L - head);
  const double diag = 2.0 / kPi * static_cast<double>(cell);

  RVector theta = RVector::Ones(n_log);
  theta(0) = theta(n_log - 1) = 0.5;
  RMatrix m(n_log, n_log);
  for (Index i = 0; i < n_log; ++i) {
    m(i, i) = theta(i) * diag;
    for (Index j = i + 1; j < n_log; ++j) {
      const double v = dt / kPi * std::sqrt(theta(i) * theta(j)) * log_coth_half(static_cast<double>(j - i) * dt);
      m(i, j) = m(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail("decomposition failed");
  return es.eigenvalues()(n_log - 1);
}

double a9_integral() {
  boost::math::quadrature::tanh_sinh<double> ts;
  // The two-argument form passes 1 - x accurately near the right end.
  auto f = [](double x, double xc) {
    if (x <= 0.0) return 2.0;
    const double right = xc > 0.0 ? xc : 1.0 - x;
    return std::log((1.0 + x) / right) / x;
  };
  return ts.integrate(f, 0.0, 1.0);
}

double odd_square_sum(long terms) {
  require(terms >= 1, "need at least one term");
  long double s = 0.0L;
  for (long n = terms; n >= 1; --n) {
    const long double d = 2.0L * n - 1.0L;
    s += 1.0L / (d * d);
  }
  return static_cast<double>(s + 1.0L / (4.0L * terms));
}

double angular_kernel_quadrature(double k, double p) {
  require(k > 0.0 && p > 0.0 && k != p, "kernel needs distinct positive momenta");
  return 2.0 * kPi * integrate_gk([&](double u) { return 1.0 / (k * k + p * p - 2.0 * k * p * u); }, -1.0, 1.0);
}

double angular_kernel_closed(double k, double p) {
  require(k > 0.0 && p > 0.0 && k != p, "kernel needs distinct positive momenta");
  return 2.0 * kPi / (k * p) * std::log((k + p) / std::abs(k - p));
}

HalfPiResult kato_half_pi(double k_min, double k_max, Index n_log) {
  HalfPiResult out;
  out.top_eigenvalue = kato_top_eigenvalue(k_min, k_max, n_log);
  out.a9_integral = a9_integral();
  out.odd_sum = odd_square_sum();
  out.n_log = n_log;
  return out;
}

}  // namespace katolab
