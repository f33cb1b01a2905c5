#pragma once

#include <ostream>

namespace genergy::cli {

/// 0 success, 1 infeasible input or certified absence, 2 budget exhausted
/// without a certificate, 3 format error.
enum Exit { kOk = 0, kInfeasible = 1, kBudget = 2, kFormat = 3 };

/// Parses argv and runs one subcommand. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace genergy::cli
