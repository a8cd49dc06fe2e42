#pragma once

#include <ostream>

namespace encmatch {

/// Quick invariant checks across all modules. Prints one line per check
/// and returns true when every check passes.
bool run_selftest(std::ostream& out);

}  // namespace encmatch
