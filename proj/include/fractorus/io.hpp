// Locale-independent number formatting shared by the CSV writers.
#pragma once

#include <charconv>
#include <ostream>
#include <string>

namespace fractorus::io {

/// 17 significant digits, '.' separator, independent of the global locale.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline void write_row_end(std::ostream& os) { os << '\n'; }

}  // namespace fractorus::io
