#pragma once

#include <string>

#include "katolab/error.hpp"
#include "katolab/operator_core.hpp"

namespace testing {

/// Message of the katolab::Error thrown by `f`, or "<no error>".
template <class F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const katolab::Error& e) {
    return e.what();
  }
  return "<no error>";
}

inline bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

inline katolab::HermitianMatrix diag(std::initializer_list<double> d) {
  katolab::RVector v(static_cast<katolab::Index>(d.size()));
  katolab::Index i = 0;
  for (double x : d) v(i++) = x;
  return katolab::HermitianMatrix::diagonal(v);
}

inline katolab::HermitianMatrix pauli_x() {
  katolab::RMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return katolab::HermitianMatrix::from_real(m);
}

inline katolab::HermitianMatrix pauli_z() { return diag({1.0, -1.0}); }

}  // namespace testing
