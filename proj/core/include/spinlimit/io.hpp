#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "spinlimit/grid.hpp"

namespace spinlimit {

/// Shortest text that round-trips the double ("%.17g").
std::string format_real(double x);

/// Provenance block written as '#'-prefixed lines ahead of every CSV body.
struct RunHeader {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;

  RunHeader& add(std::string key, std::string value);
  RunHeader& add(std::string key, double value);
  RunHeader& add(std::string key, long long value);
};

void write_header(std::ostream& out, const RunHeader& header);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  /// Appends a row; the field count must match the column count.
  void add_row(std::vector<std::string> fields);

  std::size_t size() const { return rows_.size(); }
  const std::vector<std::string>& columns() const { return columns_; }

  void write(std::ostream& out) const;
  void write(std::ostream& out, const RunHeader& header) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Dense grid as CSV with a leading label column and one column per entry.
CsvTable grid_table(const Grid<double>& grid, const std::vector<std::string>& row_labels,
                    const std::vector<std::string>& col_labels, const std::string& corner);

}  // namespace spinlimit
