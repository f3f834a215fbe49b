#pragma once

#include <ostream>

namespace toric {

// Exit codes: 0 success or affirmative answer, 1 negative answer or invalid
// data, 2 usage or input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace toric
