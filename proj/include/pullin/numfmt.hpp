#pragma once

#include <string>

namespace plab {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Parses a whole string as a double; throws InvalidArgument otherwise.
double parse_double(const std::string& text);

}  // namespace plab
