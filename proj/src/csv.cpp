#include "bpbs/csv.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace bpbs {

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& cell, const std::string& context) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end)
    throw std::runtime_error(context + ": cell '" + cell + "' is not numeric");
  return value;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  size_t start = 0;
  for (;;) {
    const size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

int CsvFile::column(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

Eigen::VectorXd CsvFile::numeric_column(const std::string& name) const {
  const int col = column(name);
  if (col < 0) throw std::runtime_error("csv: missing column '" + name + "'");
  Eigen::VectorXd values(static_cast<Eigen::Index>(rows.size()));
  for (size_t r = 0; r < rows.size(); ++r)
    values[static_cast<Eigen::Index>(r)] =
        parse_double(rows[r][static_cast<size_t>(col)],
                     "csv: column '" + name + "', row " + std::to_string(r + 2));
  return values;
}

CsvFile read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open '" + path + "'");
  CsvFile file;
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("csv: '" + path + "' is empty (header required)");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  file.header = split_line(line);
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (cells.size() != file.header.size())
      throw std::runtime_error("csv: '" + path + "' line " +
                               std::to_string(lineno) + " has " +
                               std::to_string(cells.size()) + " cells, header has " +
                               std::to_string(file.header.size()));
    file.rows.push_back(std::move(cells));
  }
  return file;
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header)
    : out_(path, std::ios::binary), path_(path), width_(header.size()) {
  if (!out_) throw std::runtime_error("csv: cannot write '" + path + "'");
  write_row(header);
}

void CsvWriter::write_row(const std::vector<std::string>& cells) {
  if (cells.size() != width_)
    throw std::logic_error("csv: row width mismatch writing '" + path_ + "'");
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

CsvWriter::~CsvWriter() { out_.flush(); }

}  // namespace bpbs
