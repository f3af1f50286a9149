#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cwsched::csv {

// Comma-separated table with a header row. Cells are plain identifiers or
// numbers; quoting is not supported.
struct Table {
  std::string path;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> lines;  // 1-based source line per row

  // Column index, or -1 when the header lacks the name.
  int column(const std::string& name) const;
  // Column index; throws InputError naming the file when absent.
  int require_column(const std::string& name) const;
  const std::string& cell(std::size_t row, int col) const;
  std::string where(std::size_t row) const;  // "path:line" for error messages
};

Table read_file(const std::string& path);

double parse_double(const Table& t, std::size_t row, int col);
std::int64_t parse_int(const Table& t, std::size_t row, int col);

// Shortest representation that parses back to the same double.
std::string format_double(double v);

}  // namespace cwsched::csv
