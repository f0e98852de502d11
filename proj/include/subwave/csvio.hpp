#ifndef SUBWAVE_CSVIO_HPP
#define SUBWAVE_CSVIO_HPP

#include <charconv>
#include <string>

namespace subwave {

/// Shortest round-trip-exact decimal with 17 significant digits,
/// locale-independent (deterministic bytes across runs).
inline std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string format_int(long long v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace subwave

#endif
