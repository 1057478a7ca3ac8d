#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace oqf::cli {

/// 17 significant digits, enough to round-trip any double.
std::string format_number(double value);

/// Quotes a field when it contains a separator, quote or line break.
std::string quote_field(std::string_view field);

/// Comma-separated table with a header row and LF line endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> row);
  std::size_t columns() const { return header_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace oqf::cli
