#include "katolab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "katolab/quadrature.hpp"

namespace katolab {

namespace {

using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using LVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

using Mp = boost::multiprecision::cpp_bin_float_50;

// Diagonal-block Pade solve in 50-digit arithmetic: equilibrated, full
// pivoting. Returns false when the block is singular at `threshold`.
bool pade_mp(const std::vector<Mp>& a, int N, int M, const Mp& threshold, std::vector<Mp>& p, std::vector<Mp>& q) {
  q.assign(static_cast<std::size_t>(N) + 1, Mp(0));
  q[0] = 1;
  auto coef = [&](int n) { return n >= 0 ? a[static_cast<std::size_t>(n)] : Mp(0); };
  if (N > 0) {
    const auto n = static_cast<std::size_t>(N);
    std::vector<std::vector<Mp>> m(n, std::vector<Mp>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
      const int k = M + 1 + static_cast<int>(i);
      for (std::size_t j = 0; j < n; ++j) m[i][j] = coef(k - 1 - static_cast<int>(j));
      m[i][n] = -coef(k);
    }
    std::vector<Mp> cs(n, Mp(0));
    for (auto& row : m) {
      Mp big = 0;
      for (std::size_t j = 0; j < n; ++j) big = std::max<Mp>(big, abs(row[j]));
      if (big == 0) big = 1;
      for (auto& x : row) x /= big;
    }
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) cs[j] = std::max<Mp>(cs[j], abs(m[i][j]));
      if (cs[j] == 0) cs[j] = 1;
      for (std::size_t i = 0; i < n; ++i) m[i][j] /= cs[j];
    }
    std::vector<std::size_t> perm(n);
    for (std::size_t j = 0; j < n; ++j) perm[j] = j;
    Mp first = -1;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t bi = c, bj = c;
      for (std::size_t i = c; i < n; ++i)
        for (std::size_t j = c; j < n; ++j)
          if (abs(m[i][j]) > abs(m[bi][bj])) bi = i, bj = j;
      const Mp piv = abs(m[bi][bj]);
      if (first < 0) first = piv;
      if (piv == 0 || piv < threshold * first) return false;
      std::swap(m[c], m[bi]);
      if (bj != c) {
        for (auto& row : m) std::swap(row[c], row[bj]);
        std::swap(perm[c], perm[bj]);
      }
      for (std::size_t i = c + 1; i < n; ++i) {
        const Mp f = m[i][c] / m[c][c];
        for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
      }
    }
    std::vector<Mp> y(n);
    for (std::size_t c = n; c-- > 0;) {
      Mp v = m[c][n];
      for (std::size_t j = c + 1; j < n; ++j) v -= m[c][j] * y[j];
      y[c] = v / m[c][c];
    }
    for (std::size_t c = 0; c < n; ++c) q[perm[c] + 1] = y[c] / cs[perm[c]];
  }
  p.assign(static_cast<std::size_t>(M) + 1, Mp(0));
  for (int i = 0; i <= M; ++i)
    for (int j = 0; j <= std::min(i, N); ++j) p[static_cast<std::size_t>(i)] += q[static_cast<std::size_t>(j)] * coef(i - j);
  return true;
}

Mp horner(const std::vector<Mp>& c, const Mp& x) {
  Mp v = 0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
  return v;
}

CMatrix exp_hermitian(const HermitianMatrix& h, double t) {
  return apply_function(eig(h), [t](double l) { return std::exp(t * l); });
}

CMatrix matrix_power(CMatrix base, int n) {
  CMatrix out = CMatrix::Identity(base.rows(), base.cols());
  while (n > 0) {
    if (n & 1) out = out * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return out;
}

CMatrix intersection_projector(const OrthogonalProjection& p, const OrthogonalProjection& q) {
  const auto pair = projection_pair(p, q);
  const auto& sd = pair.eigB;
  CMatrix r = CMatrix::Zero(sd.dim(), sd.dim());
  for (Index k = 0; k < sd.dim(); ++k)
    if (std::abs(sd.eigenvalues(k) + 1.0) <= kCornerTol) r += sd.vectors.col(k) * sd.vectors.col(k).adjoint();
  return r;
}

}  // namespace

PowerSeries::PowerSeries(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  require(!c_.empty(), "power series needs at least one coefficient");
  for (double c : c_) require(std::isfinite(c), "power series coefficient not finite");
}

PowerSeries PowerSeries::geometric(int order, double ratio) {
  std::vector<double> c(static_cast<std::size_t>(order) + 1);
  double v = 1.0;
  for (auto& x : c) {
    x = v;
    v *= ratio;
  }
  return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::euler(int order) {
  std::vector<double> c(static_cast<std::size_t>(order) + 1);
  double f = 1.0;
  for (int n = 0; n <= order; ++n) {
    if (n > 0) f *= n;
    c[static_cast<std::size_t>(n)] = (n % 2 ? -f : f);
  }
  return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::exponential(int order) {
  std::vector<double> c(static_cast<std::size_t>(order) + 1);
  double f = 1.0;
  for (int n = 0; n <= order; ++n) {
    if (n > 0) f /= n;
    c[static_cast<std::size_t>(n)] = f;
  }
  return PowerSeries(std::move(c));
}

bool PowerSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](double x) { return x == 0.0; });
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
  std::vector<double> c(static_cast<std::size_t>(std::max(order(), o.order())) + 1);
  for (int n = 0; n < static_cast<int>(c.size()); ++n) c[static_cast<std::size_t>(n)] = (*this)[n] + o[n];
  return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::operator-(const PowerSeries& o) const { return *this + o * -1.0; }

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
  const int n = std::min(order(), o.order());
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= i; ++j) c[static_cast<std::size_t>(i)] += (*this)[j] * o[i - j];
  return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::operator*(double s) const {
  std::vector<double> c = c_;
  for (auto& x : c) x *= s;
  return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::truncated(int n) const {
  require(n >= 0, "negative truncation order");
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) c[static_cast<std::size_t>(i)] = (*this)[i];
  return PowerSeries(std::move(c));
}

double PowerSeries::operator()(double z) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double RationalApproximant::operator()(double z) const {
  double num = 0.0, den = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) num = num * z + *it;
  for (auto it = q.rbegin(); it != q.rend(); ++it) den = den * z + *it;
  return num / den;
}

std::vector<double> RationalApproximant::taylor(int order) const {
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  for (int k = 0; k <= order; ++k) {
    double v = k < static_cast<int>(p.size()) ? p[static_cast<std::size_t>(k)] : 0.0;
    for (int j = 1; j <= std::min(k, static_cast<int>(q.size()) - 1); ++j)
      v -= q[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(k - j)];
    c[static_cast<std::size_t>(k)] = v;
  }
  return c;
}

std::vector<Complex> RationalApproximant::poles() const {
  int deg = static_cast<int>(q.size()) - 1;
  const double scale = std::abs(*std::max_element(q.begin(), q.end(), [](double a, double b) { return std::abs(a) < std::abs(b); }));
  while (deg > 0 && std::abs(q[static_cast<std::size_t>(deg)]) <= 1e-14 * scale) --deg;
  if (deg == 0) return {};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -q[static_cast<std::size_t>(i)] / q[static_cast<std::size_t>(deg)];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  if (es.info() != Eigen::Success) fail("decomposition failed");
  std::vector<Complex> out;
  for (Index i = 0; i < deg; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

RationalApproximant pade(const PowerSeries& series, int N, int M) {
  require(N >= 0 && M >= 0, "Pade orders must be nonnegative");
  require(series.order() >= N + M, "series too short for requested Pade order");
  RationalApproximant r;
  r.N = N;
  r.M = M;
  r.q.assign(static_cast<std::size_t>(N) + 1, 0.0);
  r.q[0] = 1.0;
  r.p.assign(static_cast<std::size_t>(M) + 1, 0.0);
  if (series.is_zero()) return r;

  std::vector<long double> q(static_cast<std::size_t>(N) + 1, 0.0L);
  q[0] = 1.0L;
  if (N > 0) {
    // sum_{j=1..N} a_{k-j} q_j = -a_k for k = M+1..M+N
    LMatrix sys(N, N);
    LVector rhs(N);
    for (int i = 0; i < N; ++i) {
      const int k = M + 1 + i;
      for (int j = 1; j <= N; ++j) sys(i, j - 1) = series[k - j];
      rhs(i) = -static_cast<long double>(series[k]);
    }
    LVector rs(N), cs(N);
    for (int i = 0; i < N; ++i) {
      rs(i) = sys.row(i).cwiseAbs().maxCoeff();
      if (rs(i) == 0) rs(i) = 1;
    }
    sys = rs.cwiseInverse().asDiagonal() * sys;
    rhs = rs.cwiseInverse().cwiseProduct(rhs);
    for (int j = 0; j < N; ++j) {
      cs(j) = sys.col(j).cwiseAbs().maxCoeff();
      if (cs(j) == 0) cs(j) = 1;
    }
    sys = sys * cs.cwiseInverse().asDiagonal();

    Eigen::FullPivLU<LMatrix> lu(sys);
    const auto diag = lu.matrixLU().diagonal().cwiseAbs();
    if (diag.maxCoeff() == 0 || diag.minCoeff() < 1e-12L * diag.maxCoeff()) fail("Pade block degeneracy");
    const LVector sol = cs.cwiseInverse().cwiseProduct(lu.solve(rhs));
    for (int j = 1; j <= N; ++j) q[static_cast<std::size_t>(j)] = sol(j - 1);
  }
  for (int i = 0; i <= M; ++i) {
    long double v = 0.0L;
    for (int j = 0; j <= std::min(i, N); ++j) v += q[static_cast<std::size_t>(j)] * series[i - j];
    r.p[static_cast<std::size_t>(i)] = static_cast<double>(v);
  }
  for (int j = 0; j <= N; ++j) r.q[static_cast<std::size_t>(j)] = static_cast<double>(q[static_cast<std::size_t>(j)]);
  return r;
}

BorelResult borel_sum(const PowerSeries& series, double z, int order_m, Continuation continuation) {
  require(order_m >= 1, "Borel order must be at least 1");
  require(std::isfinite(z), "evaluation point not finite");
  BorelResult res;
  if (series.is_zero() || z == 0.0) {
    res.value = series[0];
    res.method = "trivial";
    return res;
  }

  std::vector<Mp> b(static_cast<std::size_t>(series.order()) + 1);
  for (int n = 0; n <= series.order(); ++n)
    b[static_cast<std::size_t>(n)] = Mp(series[n]) / boost::multiprecision::tgamma(Mp(order_m * n + 1));

  std::function<double(double)> g;
  if (continuation == Continuation::taylor) {
    g = [b](double w) { return static_cast<double>(horner(b, Mp(w))); };
    res.method = "taylor";
  } else {
    // Diagonal Pade in extended precision, lowered while the block is
    // degenerate. A pole on the integration ray is only reported if it
    // persists over three orders.
    const int k_max = series.order() / 2;
    int obstructed = 0;
    bool found = false;
    std::vector<Mp> p, q;
    for (int k = k_max; k >= 0 && !found; --k) {
      if (!pade_mp(b, k, k, Mp("1e-30"), p, q)) continue;
      RationalApproximant r;
      r.N = r.M = k;
      for (const auto& x : p) r.p.push_back(static_cast<double>(x));
      for (const auto& x : q) r.q.push_back(static_cast<double>(x));
      bool on_ray = false;
      for (const Complex& w : r.poles())
        if (std::abs(w.imag()) <= 1e-9 * std::max(1.0, std::abs(w)) && w.real() / z > 0.0) on_ray = true;
      if (on_ray) {
        if (++obstructed >= 3 || k == 0) fail("Borel continuation obstructed");
        continue;
      }
      found = true;
      res.pade_order = k;
      res.method = "pade[" + std::to_string(k) + "," + std::to_string(k) + "]";
    }
    if (!found) fail("Borel continuation obstructed");
    g = [p, q](double w) {
      const Mp x(w);
      return static_cast<double>(horner(p, x) / horner(q, x));
    };
  }

  auto integrate = [&](int nodes) {
    const auto rule = gauss_laguerre(nodes);
    long double acc = 0.0L;
    for (Index i = 0; i < rule.nodes.size(); ++i)
      acc += rule.weights(i) * g(z * std::pow(rule.nodes(i), order_m));
    return static_cast<double>(acc);
  };
  res.value = integrate(64);
  res.error_estimate = std::abs(integrate(128) - res.value);
  return res;
}

std::string to_string(HankelStatus s) {
  switch (s) {
    case HankelStatus::positive_definite: return "positive_definite";
    case HankelStatus::semidefinite: return "semidefinite";
    case HankelStatus::indefinite: return "indefinite";
  }
  return "unknown";
}

std::vector<HankelStatus> hankel_stieltjes_test(const PowerSeries& series, int k_max) {
  require(k_max >= 1, "k_max must be positive");
  require(2 * (k_max - 1) <= series.order(), "series too short for requested Hankel size");
  std::vector<HankelStatus> out;
  for (int k = 1; k <= k_max; ++k) {
    LMatrix h(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const int n = i + j;
        h(i, j) = (n % 2 ? -1.0L : 1.0L) * series[n];
      }
    LVector d(k);
    bool negative_diag = false;
    for (int i = 0; i < k; ++i) {
      if (h(i, i) < 0) negative_diag = true;
      d(i) = h(i, i) > 0 ? 1.0L / std::sqrt(h(i, i)) : 1.0L;
    }
    if (negative_diag) {
      out.push_back(HankelStatus::indefinite);
      continue;
    }
    const LMatrix scaled = d.asDiagonal() * h * d.asDiagonal();
    Eigen::SelfAdjointEigenSolver<LMatrix> es(scaled, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const long double top = std::max(ev.cwiseAbs().maxCoeff(), 1e-300L);
    if (ev.minCoeff() > 1e-12L * top)
      out.push_back(HankelStatus::positive_definite);
    else if (ev.minCoeff() >= -1e-12L * top)
      out.push_back(HankelStatus::semidefinite);
    else
      out.push_back(HankelStatus::indefinite);
  }
  return out;
}

double SignedLog::value() const { return sign * std::exp(log_magnitude); }

SignedLog bender_wu_asymptotic(int n) {
  require(n >= 1, "order must be at least 1");
  const long double ln = std::log(4.0L) - 1.5L * std::log(std::numbers::pi_v<long double>) +
                         (n + 0.5L) * std::log(1.5L) + std::lgamma(n + 0.5L);
  return {(n + 1) % 2 == 0 ? 1 : -1, static_cast<double>(ln)};
}

double bender_wu_ratio(double a_n, int n) {
  const auto pred = bender_wu_asymptotic(n);
  if (a_n == 0.0) return 0.0;
  const int s = (a_n > 0 ? 1 : -1) * pred.sign;
  return s * std::exp(std::log(std::abs(a_n)) - pred.log_magnitude);
}

double lie_trotter_error(const HermitianMatrix& a, const HermitianMatrix& b, double t, int n) {
  require(n >= 1, "n must be at least 1");
  require(a.dim() == b.dim(), "dimension mismatch");
  const CMatrix exact = exp_hermitian(a + b, t);
  const CMatrix step = exp_hermitian(a, t / n) * exp_hermitian(b, t / n);
  return norm2(exact - matrix_power(step, n));
}

AlternatingLimit alternating_projection_limit(const OrthogonalProjection& p, const OrthogonalProjection& q, int n) {
  require(n >= 0, "n must be nonnegative");
  AlternatingLimit out;
  out.limit = intersection_projector(p, q);
  out.power = matrix_power(p.matrix() * q.matrix(), n);
  out.distance = norm2(out.power - out.limit);
  return out;
}

std::vector<double> alternating_projection_distances(const OrthogonalProjection& p, const OrthogonalProjection& q,
                                                     int n_max) {
  require(n_max >= 1, "n_max must be positive");
  const CMatrix r = intersection_projector(p, q);
  const CMatrix pq = p.matrix() * q.matrix();
  CMatrix pw = pq;
  std::vector<double> out;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) pw = pw * pq;
    out.push_back(norm2(pw - r));
  }
  return out;
}

}  // namespace katolab
