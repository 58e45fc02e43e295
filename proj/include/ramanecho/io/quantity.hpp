#pragma once

#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <system_error>

#include "../error.hpp"
#include "../units.hpp"

// Parsing of "value unit" strings. Every physical quantity in a scenario file
// carries an explicit unit; anything outside the tables below is rejected.
namespace ramanecho::io {

enum class Dimension { frequency, time, angle };

inline std::string_view dimension_name(Dimension d) {
  switch (d) {
    case Dimension::frequency: return "frequency";
    case Dimension::time: return "time";
    case Dimension::angle: return "angle";
  }
  return "?";
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Conversion to the library unit (kHz, us, rad). Returns false if unknown.
inline bool convert(Dimension d, std::string_view unit, double v, double& out) {
  switch (d) {
    case Dimension::frequency:
      if (unit == "Hz") return out = v / 1000.0, true;
      if (unit == "kHz") return out = v, true;
      if (unit == "MHz") return out = v * 1000.0, true;
      if (unit == "GHz") return out = v * 1e6, true;
      if (unit == "krad/s") return out = units::from_angular(v), true;
      if (unit == "Mrad/s") return out = units::from_angular(v * 1000.0), true;
      return false;
    case Dimension::time:
      if (unit == "ns") return out = v / 1000.0, true;
      if (unit == "us" || unit == "\xC2\xB5s" || unit == "\xCE\xBCs") return out = v, true;
      if (unit == "ms") return out = v * 1000.0, true;
      return false;
    case Dimension::angle:
      if (unit == "rad") return out = v, true;
      if (unit == "pi") return out = v * units::pi, true;
      return false;
  }
  return false;
}

}  // namespace detail

// Parses e.g. "50 kHz", "400 ns", "2pi", "1.8 pi", "pi". `field` names the
// offending key in error messages.
inline double parse_quantity(std::string_view text, Dimension d, const std::string& field) {
  const std::string_view s = detail::trim(text);
  double value = 1.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec == std::errc::invalid_argument) {
    // a bare "pi" means 1 pi
    if (d != Dimension::angle || detail::trim(s) != "pi")
      throw ValidationError(field + ": expected a number with a " + std::string(dimension_name(d)) +
                            " unit, got '" + std::string(s) + "'");
    value = 1.0;
    ptr = begin;
  } else if (ec != std::errc()) {
    throw ValidationError(field + ": number out of range in '" + std::string(s) + "'");
  }
  const std::string_view unit = detail::trim(std::string_view(ptr, static_cast<std::size_t>(end - ptr)));
  if (unit.empty()) {
    throw ValidationError(field + ": missing " + std::string(dimension_name(d)) + " unit in '" + std::string(s) + "'");
  }
  double out = 0.0;
  if (!detail::convert(d, unit, value, out)) {
    throw ValidationError(field + ": unsupported " + std::string(dimension_name(d)) + " unit '" + std::string(unit) +
                          "'");
  }
  return out;
}

}  // namespace ramanecho::io
