#pragma once

// Divergent-series tools (Pade, Borel, Stieltjes moment tests, quartic
// oscillator coefficients) and product-formula limits.

#include <string>
#include <vector>

#include "katolab/operator_core.hpp"
#include "katolab/projections.hpp"

namespace katolab {

class PowerSeries {
 public:
  PowerSeries() : c_{0.0} {}
  explicit PowerSeries(std::vector<double> coeffs);

  static PowerSeries zero(int order) { return PowerSeries(std::vector<double>(static_cast<std::size_t>(order) + 1, 0.0)); }
  static PowerSeries geometric(int order, double ratio = 1.0);  ///< a_n = ratio^n
  static PowerSeries euler(int order);                          ///< a_n = (-1)^n n!
  static PowerSeries exponential(int order);                    ///< a_n = 1/n!

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coeffs() const { return c_; }
  double operator[](int n) const { return n >= 0 && n <= order() ? c_[static_cast<std::size_t>(n)] : 0.0; }
  bool is_zero() const;

  PowerSeries operator+(const PowerSeries& o) const;
  PowerSeries operator-(const PowerSeries& o) const;
  /// Cauchy product truncated at the smaller order.
  PowerSeries operator*(const PowerSeries& o) const;
  PowerSeries operator*(double s) const;
  PowerSeries truncated(int order) const;
  /// Partial sum at z.
  double operator()(double z) const;

 private:
  std::vector<double> c_;
};

/// f^{[N,M]} = P/Q with deg P = M (numerator), deg Q = N, Q(0) = 1.
struct RationalApproximant {
  std::vector<double> p;  ///< numerator a_0..a_M
  std::vector<double> q;  ///< denominator, q[0] == 1
  int N = 0;
  int M = 0;

  double operator()(double z) const;
  /// Taylor coefficients of P/Q through `order`.
  std::vector<double> taylor(int order) const;
  /// Roots of the denominator.
  std::vector<Complex> poles() const;
};

/// Solves the linear contact conditions in extended precision with full
/// pivoting. Fails with "Pade block degeneracy" when the system is singular
/// to 1e-12 relative.
RationalApproximant pade(const PowerSeries& series, int N, int M);

enum class Continuation { pade, taylor };

struct BorelResult {
  double value = 0.0;
  double error_estimate = 0.0;  ///< |64-node - 128-node| quadrature difference
  int pade_order = 0;           ///< diagonal order used for continuation (0 for taylor)
  std::string method;
};

/// Borel sum of order m at z: integral over t > 0 of e^{-t} g(z t^m), with
/// g(w) = sum a_n w^n / (mn)! continued by diagonal Pade (lowered when
/// degenerate) or by its plain partial sum.
BorelResult borel_sum(const PowerSeries& series, double z, int order_m = 1,
                      Continuation continuation = Continuation::pade);

enum class HankelStatus { positive_definite, semidefinite, indefinite };
std::string to_string(HankelStatus s);

/// Status of the k x k Hankel matrices [mu_{i+j}], mu_n = (-1)^n a_n, for
/// k = 1..k_max (entry k-1 of the result).
std::vector<HankelStatus> hankel_stieltjes_test(const PowerSeries& series, int k_max);

/// Ground-state series of p^2 + x^2 + beta x^4 through order N, computed in
/// 50-digit arithmetic in a truncated oscillator basis.
PowerSeries bender_wu(int N, int basis_size);
/// Same coefficients as decimal strings with full extended precision.
std::vector<std::string> bender_wu_exact(int N, int basis_size);

struct SignedLog {
  int sign;
  double log_magnitude;
  double value() const;  ///< may overflow to +-inf
};
/// Large-order prediction 4 pi^{-3/2} (-1)^{n+1} (3/2)^{n+1/2} Gamma(n+1/2).
SignedLog bender_wu_asymptotic(int n);
/// a_n divided by the large-order prediction.
double bender_wu_ratio(double a_n, int n);

/// ||e^{t(A+B)} - (e^{tA/n} e^{tB/n})^n||_2.
double lie_trotter_error(const HermitianMatrix& a, const HermitianMatrix& b, double t, int n);

struct AlternatingLimit {
  CMatrix power;      ///< (PQ)^n
  CMatrix limit;      ///< projection onto ran P and ran Q
  double distance;    ///< ||(PQ)^n - limit||_2
};
AlternatingLimit alternating_projection_limit(const OrthogonalProjection& p, const OrthogonalProjection& q, int n);
/// Distances for n = 1..n_max.
std::vector<double> alternating_projection_distances(const OrthogonalProjection& p, const OrthogonalProjection& q,
                                                     int n_max);

}  // namespace katolab
