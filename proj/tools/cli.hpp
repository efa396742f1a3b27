#pragma once

#include <iosfwd>

namespace zakharov::cli {

/// Exit codes: 0 success, 2 invalid configuration, 3 numerical failure,
/// 1 anything else (I/O).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zakharov::cli
