#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spherepack::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

// Runs one command line (without the program name). Results go to `out`
// unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "3,4,5", "3..8" and mixtures such as "3..5,24".
std::vector<int> parse_dims(const std::string& text);

// Seven significant digits in scientific notation; "nan"/"inf" otherwise.
std::string format_number(double x);

}  // namespace spherepack::cli
