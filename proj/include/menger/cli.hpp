#pragma once

#include <iosfwd>

namespace menger::cli {

// exit codes
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kNumeric = 2;

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// quick invariant battery; prints a table, returns kOk iff everything passes
int check_suite(bool fast, std::ostream& out);

}  // namespace menger::cli
