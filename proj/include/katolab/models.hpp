#pragma once

// Named model problems with known answers.

#include <optional>
#include <string>
#include <vector>

#include "katolab/operator_core.hpp"

namespace katolab {

// Embedded eigenvalue at energy 1 -----------------------------------------

/// g(r) = 2r - sin 2r
double wvn_phase(double r);
/// u(r) = sin r / (1 + g(r)^2)
double wvn_eigenfunction(double r);
/// u''(r) by the chain rule, independent of the potential formula.
double wvn_eigenfunction_d2(double r);
/// V = 1 + u''/u in closed form; Taylor series below r = 1e-3.
double wvn_potential(double r);
std::vector<double> wvn_potential(const std::vector<double>& r);

struct InvertedPotential {
  std::vector<double> x;  ///< interior nodes where V is defined
  std::vector<double> V;
};
/// V = psi''/psi + E by central differences on a uniform grid starting at
/// x0 with spacing h. psi must stay positive.
InvertedPotential eigenfunction_to_potential(double x0, double h, const std::vector<double>& psi, double E);

// Coulomb cusp -----------------------------------------------------------

struct CuspResult {
  double ratio = 0.0;      ///< (d psi/dr)/psi at r -> 0 of the spherical average
  double target = 0.0;     ///< -Z/2
  double h = 0.0;
  double energy = 0.0;     ///< discrete ground energy
  double reference_error = 0.0;  ///< max |psi - e^{-Zr/2}| after normalizing psi(0) = 1, over r <= 5/Z
  int ell = 0;
  double average_value = 0.0;       ///< spherical average at the origin (0 for ell >= 1)
  double average_derivative = 0.0;  ///< its radial derivative (0 for ell >= 1)
};
/// Ground state of the nu = 3 channel with q = -Z/r on (0, R) with n
/// interior points; the cusp ratio is extrapolated to r = 0 on grids h and
/// h/2 and combined by Richardson.
CuspResult hydrogen_cusp(double R, Index n, double Z, int ell = 0);

// Quartic oscillator ------------------------------------------------------

/// Ground energy of -d^2/dx^2 + x^2 + beta x^4 on (-L, L): lowest eigenvalue
/// on n and 2n + 1 interior points, combined by Richardson.
double quartic_ground_energy(double beta, double L = 8.0, Index n = 4000);

// Hardy and Rellich constants ---------------------------------------------

/// Minimum of the Hardy quotient over the discretized s-wave channel in nu
/// dimensions, on a logarithmic grid r in (r_min, R).
double hardy_constant(int nu, double R, Index n, double r_min = 1e-20);
/// Minimum of ||Laplacian phi|| / ||r^{-2} phi|| over radial phi, same grid.
double rellich_constant(int nu, double R, Index n, double r_min = 1e-20);

// Shell counting ----------------------------------------------------------

struct ShellCount {
  bool unbounded = false;
  long k_max = 0;
  long long count = 0;  ///< sum of j^2 for j = 1..k_max
  double alpha = 0.0;   ///< m/(M + m)
};
/// Default nuclear-to-electron mass ratio for the helium count.
inline constexpr double kAlphaParticleMassRatio = 7294.29954;
/// `mass_ratio` = M/m; pass +inf for an infinitely heavy nucleus.
ShellCount helium_shells(double mass_ratio);

// Rank-one models ---------------------------------------------------------

enum class RankOneKind { inv_sqrt, log_case, inv };
RankOneKind rank_one_kind_from_string(const std::string& s);
std::string to_string(RankOneKind k);

/// F(E) = integral |psi|^2 / (beta x^2 - E) dx for E < 0.
double rank_one_secular(double beta, double E, RankOneKind kind);
/// Root of F(E) = 1 in (-2, 0).
double rank_one_eigenvalue(double beta, RankOneKind kind);
/// Exact root for the inv_sqrt kind.
double rank_one_inv_sqrt_exact(double beta);

struct RankOneFit {
  std::vector<std::string> basis;  ///< names of the fitted powers
  std::vector<double> coeffs;
};
/// Least-squares fit of E(beta) + 1 on the kind's leading powers:
/// inv_sqrt {beta^1/2, beta}, inv {beta, beta^3/2}, log_case {beta log beta, beta}.
RankOneFit rank_one_fit(RankOneKind kind, const std::vector<double>& betas);

// Momentum-space |x|^{-1} bound -------------------------------------------

struct HalfPiResult {
  double top_eigenvalue = 0.0;
  double a9_integral = 0.0;
  double odd_sum = 0.0;
  Index n_log = 0;
};
/// Largest eigenvalue of the symmetrized s-wave kernel
/// (1/pi)(kp)^{-1/2} log((k+p)/|k-p|) on a log grid over [k_min, k_max].
HalfPiResult kato_half_pi(double k_min, double k_max, Index n_log);
double kato_top_eigenvalue(double k_min, double k_max, Index n_log);
/// integral_0^1 x^{-1} log((1+x)/(1-x)) dx
double a9_integral();
/// sum_{n<=terms} (2n-1)^{-2} plus the 1/(4 terms) tail.
double odd_square_sum(long terms = 1000000);
/// Angular average of |k - p|^{-2} over the sphere, by quadrature.
double angular_kernel_quadrature(double k, double p);
/// (2 pi / kp) log((k+p)/|k-p|)
double angular_kernel_closed(double k, double p);

}  // namespace katolab
