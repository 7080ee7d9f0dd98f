#pragma once

// Rayleigh-Schroedinger series for a simple eigenvalue of H0 + beta B.

#include <functional>
#include <string>
#include <vector>

#include "katolab/operator_core.hpp"

namespace katolab {

struct RSReport {
  std::vector<double> E;   ///< E[0] is the unperturbed eigenvalue
  CVector psi1;            ///< first-order vector correction, orthogonal to phi0
  CVector phi0;            ///< unperturbed eigenvector (operator-core phase)
  Index index = 0;
  std::string normalization = "intermediate";
};

/// Explicit closed forms through third order.
RSReport rs_low_order(const HermitianMatrix& h0, const HermitianMatrix& b, Index index);

/// Arbitrary order via the standard recursion with intermediate normalization.
RSReport rs_series(const HermitianMatrix& h0, const HermitianMatrix& b, Index index, int order);

/// Recursion kernel, written in the eigenbasis of H0 so that the reduced
/// resolvent is diagonal. `energies` are the H0 eigenvalues, `apply_b` maps a
/// coefficient vector to B times it. Returns E_0..E_order. Works for any
/// field type T (double, complex, multiprecision).
template <class T, class Apply>
std::vector<T> rs_recursion(const std::vector<T>& energies, std::size_t index, Apply apply_b, int order) {
  const std::size_t n = energies.size();
  std::vector<T> inv_gap(n, T(0));
  for (std::size_t k = 0; k < n; ++k)
    if (k != index) inv_gap[k] = T(1) / (energies[k] - energies[index]);

  std::vector<std::vector<T>> psi;
  psi.emplace_back(n, T(0));
  psi[0][index] = T(1);
  std::vector<T> e{energies[index]};
  for (int k = 1; k <= order; ++k) {
    std::vector<T> bpsi = apply_b(psi[k - 1]);
    e.push_back(bpsi[index]);
    if (k == order) break;
    std::vector<T> next(n, T(0));
    for (std::size_t m = 0; m < n; ++m) {
      if (m == index) continue;
      T acc = -bpsi[m];
      for (int j = 1; j < k; ++j) acc += e[j] * psi[k - j][m];
      next[m] = inv_gap[m] * acc;
    }
    psi.push_back(std::move(next));
  }
  return e;
}

struct RelativeBoundCurve {
  std::vector<double> kappas;
  std::vector<double> norms;  ///< ||B (A + i kappa)^{-1}||_2
  double a = 0.0;             ///< fitted constant term
  double b = 0.0;             ///< fitted 1/kappa coefficient
};

RelativeBoundCurve relative_bound_curve(const HermitianMatrix& a, const HermitianMatrix& b,
                                        const std::vector<double>& kappas);

}  // namespace katolab
