#include "katolab/perturbation.hpp"

#include <cmath>

namespace katolab {

namespace {

struct Unperturbed {
  SpectralDecomposition sd;
  CVector phi0;
  double e0;
};

Unperturbed simple_eigenpair(const HermitianMatrix& h0, const HermitianMatrix& b, Index index) {
  require(h0.dim() == b.dim(), "dimension mismatch");
  require(index >= 0 && index < h0.dim(), "eigenvalue index out of range");
  auto sd = eig(h0);
  if (sd.clusters[sd.cluster_of(index)].size() != 1) fail("degenerate eigenvalue: RS simple-case only");
  CVector phi0 = sd.vectors.col(index);
  const double e0 = sd.eigenvalues(index);
  return {std::move(sd), std::move(phi0), e0};
}

}  // namespace

RSReport rs_low_order(const HermitianMatrix& h0, const HermitianMatrix& b, Index index) {
  const auto u = simple_eigenpair(h0, b, index);
  const CMatrix s = reduced_resolvent(u.sd, u.e0).matrix();
  const CMatrix& bm = b.matrix();

  const CVector bphi = bm * u.phi0;
  const CVector sbphi = s * bphi;
  const double e1 = u.phi0.dot(bphi).real();
  const double e2 = -bphi.dot(sbphi).real();
  // Third order keeps the S^2 term; it reduces to E1 E2 only when S is idempotent.
  const double e3 = bphi.dot(s * (bm * sbphi)).real() - e1 * sbphi.squaredNorm();

  RSReport r;
  r.E = {u.e0, e1, e2, e3};
  r.psi1 = -sbphi;
  r.phi0 = u.phi0;
  r.index = index;
  return r;
}

RSReport rs_series(const HermitianMatrix& h0, const HermitianMatrix& b, Index index, int order) {
  require(order >= 1, "series order must be at least 1");
  const auto u = simple_eigenpair(h0, b, index);
  const CMatrix bb = u.sd.vectors.adjoint() * b.matrix() * u.sd.vectors;
  std::vector<Complex> energies(static_cast<std::size_t>(u.sd.dim()));
  for (Index k = 0; k < u.sd.dim(); ++k) energies[static_cast<std::size_t>(k)] = u.sd.eigenvalues(k);

  auto apply = [&bb](const std::vector<Complex>& v) {
    const Eigen::Map<const CVector> x(v.data(), static_cast<Index>(v.size()));
    const CVector y = bb * x;
    return std::vector<Complex>(y.data(), y.data() + y.size());
  };
  const auto e = rs_recursion(energies, static_cast<std::size_t>(index), apply, order);

  RSReport r;
  for (const auto& c : e) r.E.push_back(c.real());
  r.E[0] = u.e0;
  const CMatrix s = reduced_resolvent(u.sd, u.e0).matrix();
  r.psi1 = -(s * (b.matrix() * u.phi0));
  r.phi0 = u.phi0;
  r.index = index;
  return r;
}

RelativeBoundCurve relative_bound_curve(const HermitianMatrix& a, const HermitianMatrix& b,
                                        const std::vector<double>& kappas) {
  require(a.dim() == b.dim(), "dimension mismatch");
  require(!kappas.empty(), "kappa list is empty");
  for (double k : kappas)
    if (!(k > 0.0)) fail("kappa must be positive");

  const auto sd = eig(a);
  RelativeBoundCurve out;
  out.kappas = kappas;
  for (double k : kappas) {
    CVector d(sd.dim());
    for (Index i = 0; i < sd.dim(); ++i) d(i) = 1.0 / Complex(sd.eigenvalues(i), k);
    const CMatrix r = sd.vectors * d.asDiagonal() * sd.vectors.adjoint();
    out.norms.push_back(norm2(b.matrix() * r));
  }

  const Index m = static_cast<Index>(kappas.size());
  Eigen::MatrixXd design(m, 2);
  Eigen::VectorXd rhs(m);
  for (Index i = 0; i < m; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = 1.0 / kappas[static_cast<std::size_t>(i)];
    rhs(i) = out.norms[static_cast<std::size_t>(i)];
  }
  if (m == 1) {
    out.a = rhs(0);
    return out;
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
  out.a = coef(0);
  out.b = coef(1);
  return out;
}

}  // namespace katolab
