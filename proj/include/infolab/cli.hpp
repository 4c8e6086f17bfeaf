#pragma once

#include <ostream>

namespace infolab {

/// Parses argv, runs one subcommand and writes its records to `out` (or the
/// --out file). Returns 2 on usage errors, 1 if any record has pass = false,
/// 0 otherwise.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace infolab
