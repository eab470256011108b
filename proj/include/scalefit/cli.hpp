#pragma once

#include <iosfwd>

namespace scalefit {

/// Entry point of the `scalefit` command-line tool. Returns 0 on success, 1 on
/// usage, parse or validation errors and 2 on numerical failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scalefit
