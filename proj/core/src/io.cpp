#include "spinlimit/io.hpp"

#include <fmt/format.h>

#include "spinlimit/errors.hpp"
#include "spinlimit/version.hpp"

namespace spinlimit {

std::string format_real(double x) { return fmt::format("{:.17g}", x); }

RunHeader& RunHeader::add(std::string key, std::string value) {
  params.emplace_back(std::move(key), std::move(value));
  return *this;
}

RunHeader& RunHeader::add(std::string key, double value) {
  return add(std::move(key), format_real(value));
}

RunHeader& RunHeader::add(std::string key, long long value) {
  return add(std::move(key), std::to_string(value));
}

void write_header(std::ostream& out, const RunHeader& header) {
  out << "# spinlimit " << kVersion << '\n';
  out << "# command: " << header.command << '\n';
  for (const auto& [key, value] : header.params) out << "# " << key << " = " << value << '\n';
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<std::string> fields) {
  if (fields.size() != columns_.size()) {
    throw InvalidInputError(fmt::format("csv: row has {} fields, table has {} columns",
                                        fields.size(), columns_.size()));
  }
  rows_.push_back(std::move(fields));
}

namespace {

void write_line(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << fields[i];
  }
  out << '\n';
}

}  // namespace

void CsvTable::write(std::ostream& out) const {
  write_line(out, columns_);
  for (const auto& row : rows_) write_line(out, row);
}

void CsvTable::write(std::ostream& out, const RunHeader& header) const {
  write_header(out, header);
  write(out);
}

CsvTable grid_table(const Grid<double>& grid, const std::vector<std::string>& row_labels,
                    const std::vector<std::string>& col_labels, const std::string& corner) {
  if (row_labels.size() != grid.rows() || col_labels.size() != grid.cols()) {
    throw InvalidInputError("csv: grid labels do not match grid shape");
  }
  std::vector<std::string> columns{corner};
  columns.insert(columns.end(), col_labels.begin(), col_labels.end());
  CsvTable table(std::move(columns));
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    std::vector<std::string> row{row_labels[i]};
    for (std::size_t k = 0; k < grid.cols(); ++k) row.push_back(format_real(grid(i, k)));
    table.add_row(std::move(row));
  }
  return table;
}

}  // namespace spinlimit
