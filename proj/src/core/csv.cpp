#include "core/csv.hpp"

#include <charconv>
#include <fstream>

#include "core/error.hpp"

namespace cwsched::csv {

static std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return cells;
}

Table read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  Table t;
  t.path = path;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size())
      throw InputError(path + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(t.header.size()) + " columns, got " +
                       std::to_string(cells.size()));
    t.rows.push_back(std::move(cells));
    t.lines.push_back(lineno);
  }
  if (t.header.empty()) throw InputError(path + ": missing header row");
  return t;
}

int Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

int Table::require_column(const std::string& name) const {
  int c = column(name);
  if (c < 0) throw InputError(path + ": missing column '" + name + "'");
  return c;
}

const std::string& Table::cell(std::size_t row, int col) const {
  return rows[row][static_cast<std::size_t>(col)];
}

std::string Table::where(std::size_t row) const {
  return path + ":" + std::to_string(lines[row]);
}

double parse_double(const Table& t, std::size_t row, int col) {
  const std::string& s = t.cell(row, col);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InputError(t.where(row) + ": not a number: '" + s + "'");
  return v;
}

std::int64_t parse_int(const Table& t, std::size_t row, int col) {
  const std::string& s = t.cell(row, col);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InputError(t.where(row) + ": not an integer: '" + s + "'");
  return v;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace cwsched::csv
