#pragma once

#include <stdexcept>
#include <string>

namespace katolab {

/// Raised for every precondition or numerical failure in the library. The
/// message starts with a short stable reason ("not Hermitian", "resolvent
/// pole", ...) that callers and tests may match on.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& reason) { throw Error(reason); }

inline void require(bool ok, const std::string& reason) {
  if (!ok) fail(reason);
}

}  // namespace katolab
