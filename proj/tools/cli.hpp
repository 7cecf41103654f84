#pragma once

#include <iosfwd>

namespace fracq::cli {

/// Runs one CLI invocation. Exit codes: 0 success, 1 usage/validation error,
/// 2 numerical-accuracy failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fracq::cli
