// Quartic oscillator ground-state series in 50-digit arithmetic.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "katolab/asymptotics.hpp"
#include "katolab/perturbation.hpp"

namespace katolab {

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;

// <m| x^4 |n> with x = (a + a^+)/sqrt(2); nonzero for |m - n| in {0, 2, 4}.
struct QuarticBand {
  std::vector<Real> d0, d2, d4;  // d2[n] = <n+2|x^4|n>, d4[n] = <n+4|x^4|n>

  explicit QuarticBand(std::size_t size) : d0(size), d2(size), d4(size) {
    for (std::size_t i = 0; i < size; ++i) {
      const Real n(i);
      d0[i] = (6 * n * n + 6 * n + 3) / 4;
      d2[i] = (2 * n + 3) / 2 * sqrt((n + 1) * (n + 2));
      d4[i] = sqrt((n + 1) * (n + 2) * (n + 3) * (n + 4)) / 4;
    }
  }

  std::vector<Real> apply(const std::vector<Real>& v) const {
    const std::size_t n = v.size();
    std::vector<Real> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      Real acc = d0[i] * v[i];
      if (i + 2 < n) acc += d2[i] * v[i + 2];
      if (i + 4 < n) acc += d4[i] * v[i + 4];
      if (i >= 2) acc += d2[i - 2] * v[i - 2];
      if (i >= 4) acc += d4[i - 4] * v[i - 4];
      out[i] = acc;
    }
    return out;
  }
};

std::vector<Real> coefficients(int N, int basis_size) {
  require(N >= 0, "order must be nonnegative");
  if (basis_size < 4 * N + 8) fail("truncation contaminates order N");
  const auto size = static_cast<std::size_t>(basis_size);
  std::vector<Real> energies(size);
  for (std::size_t i = 0; i < size; ++i) energies[i] = Real(2 * i + 1);
  const QuarticBand band(size);
  return rs_recursion(energies, 0, [&band](const std::vector<Real>& v) { return band.apply(v); }, N);
}

}  // namespace

PowerSeries bender_wu(int N, int basis_size) {
  const auto c = coefficients(N, basis_size);
  std::vector<double> out;
  for (const auto& x : c) out.push_back(x.convert_to<double>());
  return PowerSeries(std::move(out));
}

std::vector<std::string> bender_wu_exact(int N, int basis_size) {
  const auto c = coefficients(N, basis_size);
  std::vector<std::string> out;
  for (const auto& x : c) out.push_back(x.str(45, std::ios_base::scientific));
  return out;
}

}  // namespace katolab
