#pragma once

// Command-line front end shared by the optoweak binary and the tests.

#include <ostream>

namespace optoweak::app {

// Parses argv, runs one subcommand and writes its artifacts. Returns the
// process exit code: 0 ok, 1 validation failure, 2 config or usage error,
// 3 I/O error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace optoweak::app
