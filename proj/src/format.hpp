#pragma once

#include <charconv>
#include <string>

namespace thy::detail {

/// Shortest text that parses back to exactly `value`.
inline std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

}  // namespace thy::detail
