#pragma once

#include <iosfwd>

namespace spincat {

/// Entry point of the `spincat` tool. Returns 0 on success, 1 when an
/// invariant or numerical contract is violated, 2 on usage errors.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spincat
