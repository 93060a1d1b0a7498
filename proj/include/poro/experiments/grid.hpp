#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace poro::experiments {

/// "a:step:b" -> a, a + step, ... up to b (inclusive within step / 1000).
/// A single number yields a one-point grid.
std::vector<double> parse_range(std::string_view text);

/// A real number or a quotient "p/q", e.g. "1/300".
double parse_number(std::string_view text);

/// Comma-separated reals, each accepted by parse_number.
std::vector<double> parse_number_list(std::string_view text);

/// Comma-separated positive integers; "a-b" expands to a..b.
std::vector<std::size_t> parse_index_list(std::string_view text);

}  // namespace poro::experiments
