#pragma once

// Adiabatic transport along a gapped path s -> H(s), s in [0, 1].

#include <functional>
#include <optional>
#include <vector>

#include "katolab/operator_core.hpp"

namespace katolab {

struct OperatorPath {
  std::function<HermitianMatrix(double)> H;
  Index band = 0;       ///< index of the lowest tracked eigenvalue
  Index band_size = 1;  ///< number of consecutive eigenvalues in the band
  double gap_floor = 1e-3;
  /// Finite-difference step for P'(s); 0 picks min(1e-4, 0.01/steps).
  double derivative_step = 0.0;
  /// Optional analytic P'(s).
  std::function<CMatrix(double)> dP;
};

struct BandProjector {
  CMatrix P;
  double lambda;  ///< mean band eigenvalue
  double gap;     ///< distance from the band to the rest of the spectrum
};

/// P(s) and lambda(s); fails with "band collision" below the gap floor.
BandProjector band_projector(const OperatorPath& path, double s);

/// A(s) with iA(s) = [P'(s), P(s)].
HermitianMatrix kato_generator(const OperatorPath& path, double s, double fd_step = 1e-4);

struct TransportResult {
  std::vector<double> s;
  std::vector<CMatrix> W;
  double intertwining_defect = 0.0;  ///< max_s ||W P(0) W* - P(s)||_2
  double unitarity_defect = 0.0;     ///< max_s ||W* W - I||_max
};

TransportResult kato_transport(const OperatorPath& path, int steps);

/// Unitaries solving dU/ds = -i T H(s) U, U(0) = I, on the uniform grid. With
/// `remove_band_energy` the band energy lambda(s) is subtracted from H(s).
std::vector<CMatrix> schrodinger_evolve(const OperatorPath& path, double T, int steps,
                                        bool remove_band_energy = false);

/// max over the grid of ||(1 - P(s)) U_T(s) P(0)||_2.
double adiabatic_defect(const OperatorPath& path, double T, int steps);

/// max over the grid of ||W(s) P(0) - U_T(s) P(0)||_2 with the band energy removed.
double transport_mismatch(const OperatorPath& path, double T, int steps);

/// Geometric phase of a closed path with a rank-one band, in (-pi, pi].
/// `reference` defaults to the band eigenvector at s = 0.
double berry_phase(const OperatorPath& path, int steps, const std::optional<CVector>& reference = {});

namespace paths {

/// H(s) = cos(pi s) sz + sin(pi s) sx, lower band.
OperatorPath two_level_rotation();
/// H(s) = n(s).sigma with n on the circle of colatitude theta; closed.
OperatorPath bloch_loop(double theta, Index band = 1);
/// 3x3 rotation of diag(0, gap, 2) by exp(s K), K real antisymmetric; band 0.
OperatorPath three_level(double gap);
/// Constant path.
OperatorPath constant(const HermitianMatrix& h, Index band = 0);
/// s -> path(f(s)) for a monotone f with f(0) = 0, f(1) = 1.
OperatorPath reparametrized(const OperatorPath& path, std::function<double(double)> f);
/// The loop followed by its reverse.
OperatorPath retraced(const OperatorPath& path);

}  // namespace paths

}  // namespace katolab
