#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <system_error>

namespace morse {

// Scientific notation at 17 significant digits via to_chars: shortest exact
// textual form is not wanted here, reports pin the full precision and the
// output is locale-independent and byte-reproducible.
inline std::string format_sig17(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific,
                    16);
  return std::string(buf, res.ptr);
}

inline std::string format_int(long long v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace morse
