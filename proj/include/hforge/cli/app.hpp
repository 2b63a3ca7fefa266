#pragma once

// Command-line front end: gen, verify, spectrum, equiv, solve, sweep, double.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hforge/core.hpp"

namespace hforge {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFalse = 1;
inline constexpr int kConstraint = 2;
inline constexpr int kUsage = 64;
inline constexpr int kParse = 65;
inline constexpr int kNumeric = 70;
}  // namespace exit_code

/// "3/4pi", "-pi", "0.5pi" (multiples of pi) or plain radians give the
/// phase exp(i theta); "z:re,im" gives an arbitrary complex number.
/// Throws InvalidParameter on malformed text.
Complex parse_param_value(std::string_view text);

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hforge
