#include "katolab/adiabatic.hpp"

#include <cmath>
#include <numbers>

namespace katolab {

namespace {

const Complex I(0.0, 1.0);

CMatrix pauli_x() { return (CMatrix(2, 2) << 0, 1, 1, 0).finished(); }
CMatrix pauli_y() { return (CMatrix(2, 2) << 0, -I, I, 0).finished(); }
CMatrix pauli_z() { return (CMatrix(2, 2) << 1, 0, 0, -1).finished(); }

double fd_step_for(const OperatorPath& path, int steps) {
  if (path.derivative_step > 0.0) return path.derivative_step;
  return std::min(1e-4, 0.01 / std::max(steps, 1));
}

CMatrix projector_derivative(const OperatorPath& path, double s, double h) {
  if (path.dP) return path.dP(s);
  auto p = [&](double t) { return band_projector(path, t).P; };
  if (s - h < 0.0) return (-3.0 * p(s) + 4.0 * p(s + h) - p(s + 2.0 * h)) / (2.0 * h);
  if (s + h > 1.0) return (3.0 * p(s) - 4.0 * p(s - h) + p(s - 2.0 * h)) / (2.0 * h);
  return (p(s + h) - p(s - h)) / (2.0 * h);
}

// i A(s) = [P', P]; the transport equation is W' = [P', P] W.
CMatrix transport_rhs(const OperatorPath& path, double s, double h) {
  const CMatrix p = band_projector(path, s).P;
  const CMatrix dp = projector_derivative(path, s, h);
  return dp * p - p * dp;
}

CMatrix polar_unitary(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

double unitarity(const CMatrix& u) {
  return max_abs(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()));
}

// Classical fourth-order step for Y' = F(s) Y, then projected back onto the
// unitary group.
template <class Gen>
CMatrix rk4_unitary_step(const CMatrix& y, double s, double h, Gen&& f, double& drift) {
  const CMatrix f0 = f(s);
  const CMatrix fm = f(s + 0.5 * h);
  const CMatrix f1 = f(s + h);
  const CMatrix k1 = f0 * y;
  const CMatrix k2 = fm * (y + 0.5 * h * k1);
  const CMatrix k3 = fm * (y + 0.5 * h * k2);
  const CMatrix k4 = f1 * (y + h * k3);
  const CMatrix next = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  drift = std::max(drift, unitarity(next));
  if (!next.allFinite() || unitarity(next) > 1e-6) fail("integrator failure");
  return polar_unitary(next);
}

}  // namespace

BandProjector band_projector(const OperatorPath& path, double s) {
  require(static_cast<bool>(path.H), "path has no Hamiltonian");
  const HermitianMatrix h = path.H(s);
  const Index n = h.dim();
  require(path.band >= 0 && path.band_size >= 1 && path.band + path.band_size <= n, "band index out of range");
  const auto sd = eig(h);
  BandProjector bp;
  bp.P = CMatrix::Zero(n, n);
  double sum = 0.0;
  for (Index k = path.band; k < path.band + path.band_size; ++k) {
    bp.P += sd.vectors.col(k) * sd.vectors.col(k).adjoint();
    sum += sd.eigenvalues(k);
  }
  bp.lambda = sum / static_cast<double>(path.band_size);
  bp.gap = std::numeric_limits<double>::infinity();
  if (path.band > 0) bp.gap = sd.eigenvalues(path.band) - sd.eigenvalues(path.band - 1);
  if (path.band + path.band_size < n)
    bp.gap = std::min(bp.gap, sd.eigenvalues(path.band + path.band_size) - sd.eigenvalues(path.band + path.band_size - 1));
  if (bp.gap < path.gap_floor) fail("band collision");
  return bp;
}

HermitianMatrix kato_generator(const OperatorPath& path, double s, double fd_step) {
  return HermitianMatrix(-I * transport_rhs(path, s, fd_step), 1e-8);
}

TransportResult kato_transport(const OperatorPath& path, int steps) {
  require(steps >= 10, "steps must be at least 10");
  const double h = 1.0 / steps;
  const double fd = fd_step_for(path, steps);
  const BandProjector b0 = band_projector(path, 0.0);
  const Index n = b0.P.rows();

  TransportResult r;
  CMatrix w = CMatrix::Identity(n, n);
  r.s.push_back(0.0);
  r.W.push_back(w);
  auto gen = [&](double s) { return transport_rhs(path, s, fd); };
  for (int k = 0; k < steps; ++k) {
    const double s = k * h;
    w = rk4_unitary_step(w, s, h, gen, r.unitarity_defect);
    const double s1 = (k + 1 == steps) ? 1.0 : (k + 1) * h;
    r.s.push_back(s1);
    r.W.push_back(w);
    const CMatrix ps = band_projector(path, s1).P;
    r.intertwining_defect = std::max(r.intertwining_defect, norm2(w * b0.P * w.adjoint() - ps));
  }
  return r;
}

std::vector<CMatrix> schrodinger_evolve(const OperatorPath& path, double T, int steps, bool remove_band_energy) {
  require(T >= 0.0, "T must be nonnegative");
  require(steps >= 1, "steps must be positive");
  const double h = 1.0 / steps;
  auto hamiltonian = [&](double s) -> CMatrix {
    CMatrix m = path.H(s).matrix();
    if (remove_band_energy) m.diagonal().array() -= band_projector(path, s).lambda;
    return m;
  };
  auto gen = [&](double s) -> CMatrix { return -I * T * hamiltonian(s); };
  const Index n = path.H(0.0).dim();
  std::vector<CMatrix> out{CMatrix::Identity(n, n)};
  double drift = 0.0;
  for (int k = 0; k < steps; ++k) {
    // Output grid is fixed; substeps keep T h ||H|| small so RK4 stays accurate for any T.
    const double scale = T * h * std::max(hamiltonian(k * h).norm(), hamiltonian((k + 1) * h).norm());
    const int sub = std::max(1, static_cast<int>(std::ceil(scale / 0.02)));
    CMatrix u = out.back();
    for (int j = 0; j < sub; ++j) u = rk4_unitary_step(u, (k + static_cast<double>(j) / sub) * h, h / sub, gen, drift);
    out.push_back(std::move(u));
  }
  return out;
}

double adiabatic_defect(const OperatorPath& path, double T, int steps) {
  const auto u = schrodinger_evolve(path, T, steps, true);
  const CMatrix p0 = band_projector(path, 0.0).P;
  const Index n = p0.rows();
  double worst = 0.0;
  for (int k = 0; k <= steps; ++k) {
    const CMatrix p = band_projector(path, static_cast<double>(k) / steps).P;
    worst = std::max(worst, norm2((CMatrix::Identity(n, n) - p) * u[static_cast<std::size_t>(k)] * p0));
  }
  return worst;
}

double transport_mismatch(const OperatorPath& path, double T, int steps) {
  const auto u = schrodinger_evolve(path, T, steps, true);
  const auto w = kato_transport(path, steps);
  const CMatrix p0 = band_projector(path, 0.0).P;
  double worst = 0.0;
  for (int k = 0; k <= steps; ++k) {
    const auto i = static_cast<std::size_t>(k);
    worst = std::max(worst, norm2(w.W[i] * p0 - u[i] * p0));
  }
  return worst;
}

double berry_phase(const OperatorPath& path, int steps, const std::optional<CVector>& reference) {
  if (max_abs(path.H(1.0).matrix() - path.H(0.0).matrix()) > 1e-10) fail("path not closed");
  if (path.band_size != 1) fail("holonomy is a matrix: use kato_transport");
  const CMatrix p0 = band_projector(path, 0.0).P;
  CVector phi;
  if (reference) {
    require(reference->size() == p0.rows(), "dimension mismatch");
    require(std::abs(reference->norm() - 1.0) <= 1e-10, "reference vector not normalized");
    require((p0 * *reference - *reference).norm() <= 1e-8, "reference vector not in the band");
    phi = *reference;
  } else {
    phi = eig(path.H(0.0)).vectors.col(path.band);
  }
  const auto t = kato_transport(path, steps);
  return std::arg(phi.dot(t.W.back() * phi));
}

namespace paths {

OperatorPath two_level_rotation() {
  OperatorPath p;
  p.H = [](double s) {
    const double a = std::numbers::pi * s;
    return HermitianMatrix(std::cos(a) * pauli_z() + std::sin(a) * pauli_x());
  };
  p.band = 0;
  return p;
}

OperatorPath bloch_loop(double theta, Index band) {
  OperatorPath p;
  p.H = [theta](double s) {
    const double ph = 2.0 * std::numbers::pi * s;
    return HermitianMatrix(std::sin(theta) * (std::cos(ph) * pauli_x() + std::sin(ph) * pauli_y()) +
                           std::cos(theta) * pauli_z());
  };
  p.band = band;
  return p;
}

OperatorPath three_level(double gap) {
  require(gap > 0.0 && gap < 2.0, "three-level gap must lie in (0, 2)");
  Eigen::Matrix3d k;
  k << 0.0, 1.0, 0.5, -1.0, 0.0, 1.0, -0.5, -1.0, 0.0;
  k *= std::numbers::pi / 2.0;
  // exp(sK) through the Hermitian generator iK.
  const auto gen = eig(HermitianMatrix(I * k.cast<Complex>()));
  RVector d(3);
  d << 0.0, gap, 2.0;
  const CMatrix h0 = d.cast<Complex>().asDiagonal();
  OperatorPath p;
  p.H = [gen, h0](double s) {
    CVector ph(3);
    for (Index j = 0; j < 3; ++j) ph(j) = std::exp(-I * s * gen.eigenvalues(j));
    const CMatrix u = gen.vectors * ph.asDiagonal() * gen.vectors.adjoint();
    return HermitianMatrix(u * h0 * u.adjoint(), 1e-10);
  };
  p.band = 0;
  p.gap_floor = 0.5 * gap;
  return p;
}

OperatorPath constant(const HermitianMatrix& h, Index band) {
  OperatorPath p;
  p.H = [h](double) { return h; };
  p.band = band;
  return p;
}

OperatorPath reparametrized(const OperatorPath& path, std::function<double(double)> f) {
  OperatorPath p = path;
  p.H = [h = path.H, f = std::move(f)](double s) { return h(f(s)); };
  p.dP = nullptr;
  return p;
}

OperatorPath retraced(const OperatorPath& path) {
  // sin^2 keeps the turning point smooth.
  return reparametrized(path, [](double s) {
    const double x = std::sin(std::numbers::pi * s);
    return x * x;
  });
}

}  // namespace paths

}  // namespace katolab
