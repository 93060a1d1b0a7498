#include "poro/experiments/grid.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "poro/error.hpp"

namespace poro::experiments {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::size_t parse_count(std::string_view s) {
  s = trim(s);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || v == 0) {
    throw ConfigError("not a positive integer: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

double parse_number(std::string_view text) {
  const auto parts = split(text, '/');
  if (parts.size() == 1) return parse_real(parts[0]);
  if (parts.size() != 2) throw ConfigError("bad quotient: '" + std::string(text) + "'");
  const double den = parse_real(parts[1]);
  if (den == 0.0) throw ConfigError("zero denominator: '" + std::string(text) + "'");
  return parse_real(parts[0]) / den;
}

std::vector<double> parse_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) return {parse_number(parts[0])};
  if (parts.size() != 3) throw ConfigError("range must be a:step:b, got '" + std::string(text) + "'");
  const double a = parse_number(parts[0]);
  const double step = parse_number(parts[1]);
  const double b = parse_number(parts[2]);
  if (!(step > 0.0)) throw ConfigError("range step must be positive");
  if (b < a) throw ConfigError("range end precedes its start");
  std::vector<double> out;
  for (std::size_t i = 0;; ++i) {
    const double v = a + static_cast<double>(i) * step;
    if (v > b + step * 1e-3) break;
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  for (auto part : split(text, ',')) out.push_back(parse_number(part));
  return out;
}

std::vector<std::size_t> parse_index_list(std::string_view text) {
  std::vector<std::size_t> out;
  for (auto part : split(text, ',')) {
    const auto ends = split(part, '-');
    if (ends.size() == 1) {
      out.push_back(parse_count(ends[0]));
    } else if (ends.size() == 2) {
      const std::size_t lo = parse_count(ends[0]);
      const std::size_t hi = parse_count(ends[1]);
      if (hi < lo) throw ConfigError("empty index range '" + std::string(part) + "'");
      for (std::size_t k = lo; k <= hi; ++k) out.push_back(k);
    } else {
      throw ConfigError("bad index list entry '" + std::string(part) + "'");
    }
  }
  return out;
}

}  // namespace poro::experiments
