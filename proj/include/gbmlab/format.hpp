#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace gbmlab {

// 17 significant digits: round-trip exact for IEEE double.
inline std::string to_g17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// strtod with full-token consumption; rejects NaN and infinities.
inline double parse_finite_double(const std::string& text,
                                  const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": not a number: '" + text + "'");
  }
  while (used < text.size() &&
         (text[used] == ' ' || text[used] == '\t')) {
    ++used;
  }
  if (used != text.size()) {
    throw std::invalid_argument(what + ": trailing garbage in '" + text + "'");
  }
  if (!std::isfinite(v)) {
    throw std::invalid_argument(what + ": must be finite, got '" + text + "'");
  }
  return v;
}

inline long long parse_integer(const std::string& text,
                               const std::string& what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": not an integer: '" + text + "'");
  }
  if (used != text.size()) {
    throw std::invalid_argument(what + ": trailing garbage in '" + text + "'");
  }
  return v;
}

inline unsigned long long parse_unsigned(const std::string& text,
                                         const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": not an unsigned integer: '" + text +
                                "'");
  }
  if (used != text.size()) {
    throw std::invalid_argument(what + ": trailing garbage in '" + text + "'");
  }
  return v;
}

}  // namespace gbmlab
