#pragma once

// Two-sided eigenvalue enclosures from a trial vector and a spectral window.

#include <optional>

#include "katolab/operator_core.hpp"

namespace katolab {

struct TrialReport {
  double eta = 0.0;     ///< Rayleigh quotient
  double eps2 = 0.0;    ///< squared residual ||(H - eta) phi||^2
  double alpha = 0.0;
  double zeta = 0.0;
  double gamma0 = 0.0;  ///< lower end of the enclosure
  double kappa0 = 0.0;  ///< upper end
  bool spectrum_below_kappa0 = false;  ///< some eigenvalue in (alpha, kappa0]
  bool spectrum_above_gamma0 = false;  ///< some eigenvalue in [gamma0, zeta)
  /// Whether (alpha, zeta) holds exactly one eigenvalue. Empty when the
  /// matrix was too large to check, in which case the caller's claim is trusted.
  std::optional<bool> single_point;
};

/// Largest dimension for which enclosure() confirms its hypotheses with eig.
inline constexpr Index kTempleVerifyLimit = 2000;

double rayleigh(const HermitianMatrix& h, const CVector& phi);
/// epsilon = ||(H - eta) phi||, never via <phi, H^2 phi> - eta^2.
double residual(const HermitianMatrix& h, const CVector& phi);

TrialReport enclosure(const HermitianMatrix& h, const CVector& phi, double alpha, double zeta);

/// True iff <phi, (H - alpha)(H - zeta) phi> < 0, which forces spectrum
/// inside (alpha, zeta).
bool spectrum_hit(const HermitianMatrix& h, const CVector& phi, double alpha, double zeta);
/// The quadratic form itself.
double window_form(const HermitianMatrix& h, const CVector& phi, double alpha, double zeta);

struct GapBound {
  double bound;     ///< sqrt(2 - 2 sqrt(1 - eps^2/delta^2))
  double majorant;  ///< (eps/delta) (1 - eps^2/delta^2)^{-1/4}
};

/// Distance bound between a normalized trial vector and the nearby
/// eigenvector, for a residual eps and distance delta to the rest of the
/// spectrum. `eta` is carried for reporting only.
GapBound eigenvector_gap_bound(double eta, double eps, double delta);

/// ||psi - phi|| after rotating psi so that <psi, phi> >= 0.
double phase_aligned_distance(const CVector& psi, const CVector& phi);

}  // namespace katolab
