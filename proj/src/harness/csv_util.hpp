#ifndef FOEVAL_SRC_CSV_UTIL_HPP
#define FOEVAL_SRC_CSV_UTIL_HPP

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "foeval/error.hpp"

namespace foeval::csv {

inline std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

inline double to_double(std::string_view field, const std::string& context) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(context + ": bad number '" + std::string(field) + "'");
  }
  return value;
}

inline std::uint64_t to_u64(std::string_view field, const std::string& context) {
  std::uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(context + ": bad integer '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace foeval::csv

#endif  // FOEVAL_SRC_CSV_UTIL_HPP
