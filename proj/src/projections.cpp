#include "katolab/projections.hpp"

#include <algorithm>
#include <cmath>

namespace katolab {

namespace {

CMatrix columns_where(const SpectralDecomposition& sd, const std::function<bool(double)>& keep) {
  std::vector<Index> idx;
  for (Index k = 0; k < sd.dim(); ++k)
    if (keep(sd.eigenvalues(k))) idx.push_back(k);
  CMatrix out(sd.dim(), static_cast<Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Index>(j)) = sd.vectors.col(idx[j]);
  return out;
}

bool near(double x, double target) { return std::abs(x - target) <= kCornerTol; }

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

ProjectionPair projection_pair(const OrthogonalProjection& p, const OrthogonalProjection& q) {
  if (p.dim() != q.dim()) fail("not a projection pair: dimension mismatch");
  const Index n = p.dim();
  const CMatrix& pm = p.matrix();
  const CMatrix& qm = q.matrix();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix a = pm - qm;
  const CMatrix b = id - pm - qm;
  const CMatrix a2 = a * a;

  if (max_abs(a2 + b * b - id) > 1e-10) fail("not a projection pair: A^2 + B^2 != 1");
  if (max_abs(a * b + b * a) > 1e-10) fail("not a projection pair: AB + BA != 0");
  if (max_abs(pm * a2 - a2 * pm) > 1e-10 || max_abs(qm * a2 - a2 * qm) > 1e-10)
    fail("not a projection pair: A^2 does not commute with P and Q");

  HermitianMatrix ah(a, 1e-12), bh(b, 1e-12);
  auto ea = eig(ah, kCornerTol);
  auto eb = eig(bh, kCornerTol);
  const double norm = ea.eigenvalues.cwiseAbs().maxCoeff();
  if (norm > 1.0 + 1e-12) fail("not a projection pair: ||P - Q|| > 1");
  return ProjectionPair{p, q, std::move(ah), std::move(bh), norm, std::move(ea), std::move(eb)};
}

CMatrix kato_unitary(const ProjectionPair& pair) {
  if (!(pair.normPQ < 1.0 - 1e-10)) fail("projections not norm-close");
  const Index n = pair.dim();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix& p = pair.P.matrix();
  const CMatrix& q = pair.Q.matrix();
  const CMatrix w = q * p + (id - q) * (id - p);
  const CMatrix inv_sqrt = apply_function(pair.eigA, [](double l) { return 1.0 / std::sqrt(1.0 - l * l); });
  return w * inv_sqrt;
}

CMatrix sgn_unitary(const ProjectionPair& pair) {
  if (pair.eigB.eigenvalues.cwiseAbs().minCoeff() < 1e-10) fail("B is singular");
  return apply_function(pair.eigB, sgn);
}

long trace_index(const ProjectionPair& pair) {
  const double tr = pair.A.matrix().trace().real();
  const double r = std::round(tr);
  if (std::abs(tr - r) > 1e-6) fail("numerical degradation");
  return static_cast<long>(r);
}

std::vector<SymmetryEntry> spectral_symmetry(const ProjectionPair& pair) {
  const auto& sd = pair.eigA;
  auto multiplicity = [&sd](double l) {
    Index m = 0;
    for (Index k = 0; k < sd.dim(); ++k)
      if (near(sd.eigenvalues(k), l)) ++m;
    return m;
  };
  std::vector<SymmetryEntry> out;
  for (const auto& cl : sd.clusters) {
    const double l = sd.eigenvalues(cl.front());
    const bool exceptional = near(l, 0.0) || near(std::abs(l), 1.0);
    const double lv = exceptional ? std::round(l) : l;
    out.push_back({lv, static_cast<Index>(cl.size()), multiplicity(-l), exceptional});
  }
  return out;
}

CornerDims corner_subspaces(const ProjectionPair& pair) {
  CornerDims d;
  for (Index k = 0; k < pair.dim(); ++k) {
    const double a = pair.eigA.eigenvalues(k);
    const double b = pair.eigB.eigenvalues(k);
    if (near(a, 1.0)) ++d.p_kerq;
    else if (near(a, -1.0)) ++d.kerp_q;
    else d.margin = std::min(d.margin, 1.0 - std::abs(a));
    if (near(b, -1.0)) ++d.p_q;
    else if (near(b, 1.0)) ++d.kerq_kerp;
    else d.margin = std::min(d.margin, 1.0 - std::abs(b));
  }
  return d;
}

CornerDims corner_subspaces(const OrthogonalProjection& p, const OrthogonalProjection& q) {
  return corner_subspaces(projection_pair(p, q));
}

CMatrix symmetry_conjugator(const ProjectionPair& pair) {
  const CMatrix e = columns_where(pair.eigA, [](double a) { return near(a, 1.0); });
  const CMatrix f = columns_where(pair.eigA, [](double a) { return near(a, -1.0); });
  if (e.cols() != f.cols()) fail("no symmetry: corner dimensions differ");
  CMatrix u = f * e.adjoint() + e * f.adjoint();
  u += apply_function(pair.eigB, [](double b) { return std::abs(b) > kCornerTol ? sgn(b) : 0.0; });
  return u;
}

HalmosDecomposition halmos(const ProjectionPair& pair) {
  HalmosDecomposition h;
  h.corners = corner_subspaces(pair);
  const Index n = pair.dim();
  auto generic = [](double a) { return std::abs(a) > kCornerTol && std::abs(a) < 1.0 - kCornerTol; };
  h.generic_basis = columns_where(pair.eigA, generic);
  if (h.generic_basis.cols() == 0) {
    h.b1 = h.w = CMatrix(n, 0);
    h.c = h.s = CMatrix(0, 0);
    return h;
  }

  const CMatrix& g = h.generic_basis;
  const CMatrix pg = g.adjoint() * pair.P.matrix() * g;
  const auto epg = eig(HermitianMatrix(0.5 * (pg + pg.adjoint()), 1e-10));
  const CMatrix v1 = g * columns_where(epg, [](double x) { return x > 0.5; });

  auto on_generic = [&](const SpectralDecomposition& sd, const std::function<double(double)>& f) {
    return apply_function(sd, [&](double x) { return generic(x) ? f(x) : 0.0; });
  };
  const CMatrix ua = on_generic(pair.eigA, sgn);
  const CMatrix ub = on_generic(pair.eigB, sgn);
  const CMatrix abs_a = on_generic(pair.eigA, [](double x) { return std::abs(x); });
  const CMatrix abs_b = on_generic(pair.eigB, [](double x) { return std::abs(x); });

  h.b1 = v1;
  h.w = ua * ub * v1;
  h.c = v1.adjoint() * abs_b * v1;
  h.s = v1.adjoint() * abs_a * v1;

  const CMatrix cs = h.c * h.s;
  const CMatrix q_blocks = v1 * (h.c * h.c) * v1.adjoint() + v1 * cs * h.w.adjoint() + h.w * cs * v1.adjoint() +
                           h.w * (h.s * h.s) * h.w.adjoint();
  const CMatrix proj_g = g * g.adjoint();
  const CMatrix q_generic = proj_g * pair.Q.matrix() * proj_g;
  h.reconstruction_residual = max_abs(q_blocks - q_generic);
  return h;
}

ObliqueNorms oblique_norms(const CMatrix& pi) {
  require(pi.rows() >= 1 && pi.rows() == pi.cols(), "not a projection: matrix must be square");
  if (max_abs(pi * pi - pi) > 1e-10) fail("not a projection: not idempotent");
  const Index n = pi.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  if (max_abs(pi) <= 1e-12 || max_abs(id - pi) <= 1e-12) fail("trivial projection excluded");

  ObliqueNorms o;
  o.norm_pi = norm2(pi);
  o.norm_complement = norm2(id - pi);
  const auto p = OrthogonalProjection::onto_span(pi);
  const auto q = OrthogonalProjection::onto_span(id - pi);
  o.cos_angle = norm2(p.matrix() * q.matrix());
  o.ljance = 1.0 / std::sqrt(std::max(0.0, 1.0 - o.cos_angle * o.cos_angle));
  return o;
}

}  // namespace katolab
