#include "katolab/temple_kato.hpp"

#include <cmath>

namespace katolab {

namespace {

void check_trial(const HermitianMatrix& h, const CVector& phi) {
  require(phi.size() == h.dim(), "dimension mismatch");
  if (std::abs(phi.norm() - 1.0) > 1e-10) fail("trial vector not normalized");
}

}  // namespace

double rayleigh(const HermitianMatrix& h, const CVector& phi) {
  check_trial(h, phi);
  return phi.dot(h.matrix() * phi).real();
}

double residual(const HermitianMatrix& h, const CVector& phi) {
  const double eta = rayleigh(h, phi);
  return (h.matrix() * phi - eta * phi).norm();
}

TrialReport enclosure(const HermitianMatrix& h, const CVector& phi, double alpha, double zeta) {
  TrialReport r;
  r.eta = rayleigh(h, phi);
  const double eps = (h.matrix() * phi - r.eta * phi).norm();
  r.eps2 = eps * eps;
  r.alpha = alpha;
  r.zeta = zeta;
  if (!(alpha < r.eta) || !(r.eta < zeta)) fail("window excludes Rayleigh quotient");
  if (!(r.eps2 < (r.eta - alpha) * (zeta - r.eta))) fail("Temple-Kato hypothesis fails");
  r.gamma0 = r.eta - r.eps2 / (zeta - r.eta);
  r.kappa0 = r.eta + r.eps2 / (r.eta - alpha);

  if (h.dim() <= kTempleVerifyLimit) {
    const auto sd = eig(h);
    const double slack = 1e-12 * std::max(1.0, sd.eigenvalues.cwiseAbs().maxCoeff());
    int inside = 0;
    for (Index k = 0; k < sd.dim(); ++k) {
      const double l = sd.eigenvalues(k);
      if (l > alpha && l < zeta) ++inside;
      if (l > alpha && l <= r.kappa0 + slack) r.spectrum_below_kappa0 = true;
      if (l >= r.gamma0 - slack && l < zeta) r.spectrum_above_gamma0 = true;
    }
    r.single_point = inside == 1;
  }
  return r;
}

double window_form(const HermitianMatrix& h, const CVector& phi, double alpha, double zeta) {
  check_trial(h, phi);
  const CVector u = h.matrix() * phi - alpha * phi;
  const CVector v = h.matrix() * phi - zeta * phi;
  return u.dot(v).real();
}

bool spectrum_hit(const HermitianMatrix& h, const CVector& phi, double alpha, double zeta) {
  return window_form(h, phi, alpha, zeta) < 0.0;
}

GapBound eigenvector_gap_bound(double /*eta*/, double eps, double delta) {
  require(eps >= 0.0, "residual must be nonnegative");
  if (!(eps < delta)) fail("gap bound hypothesis fails: eps must be below delta");
  const double x2 = (eps / delta) * (eps / delta);
  const double c = std::sqrt(1.0 - x2);
  GapBound g;
  g.bound = std::sqrt(std::max(0.0, 2.0 - 2.0 * c));
  g.majorant = (eps / delta) / std::sqrt(c);
  require(g.bound <= g.majorant * (1.0 + 1e-12) + 1e-300, "numerical degradation");
  return g;
}

double phase_aligned_distance(const CVector& psi, const CVector& phi) {
  require(psi.size() == phi.size(), "dimension mismatch");
  const Complex ov = psi.dot(phi);
  const Complex rot = std::abs(ov) > 0.0 ? ov / std::abs(ov) : Complex(1.0);
  return (rot * psi - phi).norm();
}

}  // namespace katolab
