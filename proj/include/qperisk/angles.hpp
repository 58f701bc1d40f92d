#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "qperisk/errors.hpp"

namespace qperisk {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps a phase into [-π, π]; the tie at ±π resolves to +π.
inline double wrap_phase(double delta) {
  double r = std::fmod(delta + kPi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  double w = r - kPi;
  if (w <= -kPi) w = kPi;
  return w;
}

/// Wraps a phase into [0, 2π).
inline double wrap_positive(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

namespace detail {

inline double parse_plain_number(std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ArgumentError("cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace detail

/// Parses an angle given as plain radians, "pi", "<k>pi", "pi/<n>" or "<k>pi/<n>".
inline double parse_angle(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw ArgumentError("empty angle");
  const auto pi_pos = text.find("pi");
  if (pi_pos == std::string_view::npos) return detail::parse_plain_number(text);

  double numerator = 1.0;
  auto prefix = trim(text.substr(0, pi_pos));
  if (!prefix.empty()) {
    if (prefix.back() == '*') prefix = trim(prefix.substr(0, prefix.size() - 1));
    if (prefix == "-") {
      numerator = -1.0;
    } else {
      numerator = detail::parse_plain_number(prefix);
    }
  }
  double denominator = 1.0;
  auto rest = trim(text.substr(pi_pos + 2));
  if (!rest.empty()) {
    if (rest.front() != '/') throw ArgumentError("cannot parse angle '" + std::string(text) + "'");
    int den = 0;
    rest = trim(rest.substr(1));
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), den);
    if (ec != std::errc{} || ptr != rest.data() + rest.size() || den == 0) {
      throw ArgumentError("cannot parse angle '" + std::string(text) + "'");
    }
    denominator = den;
  }
  return numerator * kPi / denominator;
}

}  // namespace qperisk
