#pragma once

// Minimal CSV helpers for the project's file formats. Fields are plain
// comma-separated tokens; quoting is not supported and identifiers must not
// contain commas.

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fuzzyload::csv {

std::vector<std::string_view> split(std::string_view line);

// Strict full-token parses; leading/trailing garbage is rejected.
std::optional<double> parse_double(std::string_view text);
std::optional<unsigned long long> parse_unsigned(std::string_view text);

// 17 significant digits, general notation: round-trips every double.
std::string format_double(double value);

// Reads lines, tracking 1-based line numbers and stripping a trailing '\r'.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line);
  [[nodiscard]] std::size_t line_number() const noexcept { return line_number_; }

 private:
  std::istream& in_;
  std::size_t line_number_ = 0;
};

// "h00".."h23" style column names.
std::string hour_column(char prefix, std::size_t hour);

}  // namespace fuzzyload::csv
