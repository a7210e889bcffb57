#pragma once

#include <iosfwd>

namespace matclass::cli {

// Exit codes: 0 pass/success, 1 fail verdict, 2 undefined/degenerate,
// 3 usage/input error, 4 cap/budget error.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace matclass::cli
