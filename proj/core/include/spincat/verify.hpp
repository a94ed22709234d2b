#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace spincat {

struct VerifyCheck {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;

  bool all_passed() const;
};

/// Runs the invariant suite of every library module. All randomized draws
/// come from `seed`. Each finished check is written to `log` when non-null.
VerifyReport run_verify(std::uint64_t seed, std::ostream* log = nullptr);

}  // namespace spincat
