#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spincat {

// Precondition violations: bad parameters, out-of-range quantum numbers,
// insufficient cutoff for the requested state.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The two branches of a cat state cancel; the normalized state does not exist.
class DegenerateSuperposition : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A numerical contract failed at run time (negative eigenvalues beyond the
// clamp, trace drift in a quadrature, failed audit, inadequate cutoff).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-fatal truncation-quality messages. Passed by pointer to evaluators that
// can detect an unresolved kernel; a null pointer discards them.
struct Diagnostics {
  std::vector<std::string> warnings;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
  bool empty() const { return warnings.empty(); }
};

}  // namespace spincat
