// cli.hpp: Command-line entry point
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure,
// 3 validation failure.

#pragma once

#include <iosfwd>

namespace pbg {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pbg
