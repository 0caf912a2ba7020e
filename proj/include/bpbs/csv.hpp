#pragma once

#include <Eigen/Dense>
#include <fstream>
#include <string>
#include <vector>

namespace bpbs {

/// Shortest locale-independent decimal representation that parses back to
/// the same double.
std::string format_double(double value);

/// Strict numeric parse of one cell (no locale, no trailing junk).
double parse_double(const std::string& cell, const std::string& context);

/// Comma-separated table with a mandatory header row; cells kept as text
/// so non-numeric columns can ride along untouched.
struct CsvFile {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
  /// Numeric view of a named column; throws with row context on bad cells.
  Eigen::VectorXd numeric_column(const std::string& name) const;
};

CsvFile read_csv(const std::string& path);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void write_row(const std::vector<std::string>& cells);
  ~CsvWriter();

 private:
  std::ofstream out_;
  std::string path_;
  size_t width_;
};

}  // namespace bpbs
