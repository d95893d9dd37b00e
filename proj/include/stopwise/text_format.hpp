#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace stopwise {

// Shortest round-trip style formatting with a fixed number of significant
// digits, locale independent. Non-finite values become JSON null.
inline std::string format_double(double v, int digits) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v,
                           std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

}  // namespace stopwise
