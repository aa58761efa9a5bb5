#pragma once

// Deterministic CSV: comma separator, header row, LF line endings, numbers
// with 12 significant digits and no locale dependence.

#include <string>
#include <string_view>
#include <vector>

namespace optoweak::app {

// "%.12g", with -0 printed as 0 and non-finite values as nan/inf/-inf.
std::string format_number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }

  // Appends a row of preformatted cells; throws std::invalid_argument on a
  // column-count mismatch.
  void add_row(std::vector<std::string> cells);
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Minimal reader for the dialect above. Throws std::invalid_argument on
// ragged rows.
struct ParsedCsv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
};

ParsedCsv parse_csv(std::string_view text);

}  // namespace optoweak::app
