#pragma once

#include <ostream>

namespace selchab::cli {

/// Exit codes: 0 success, 1 failure, 2 inconclusive, 3 input error.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace selchab::cli
