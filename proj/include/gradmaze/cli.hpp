#pragma once

#include <iosfwd>

namespace gradmaze::cli {

/// Entry point of the `gradmaze` tool (subcommands gen, solve, verify,
/// render, bench). Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace gradmaze::cli
