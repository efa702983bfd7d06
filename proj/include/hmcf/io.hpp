#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hmcf/grid.hpp"

namespace hmcf {

/// Numeric table with a one-line header. Values are written with the
/// shortest representation that reads back to the same double.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  std::size_t column(const std::string& name) const;  // InvalidArgument if absent
};

std::string format_double(double v);
double parse_double(const std::string& s);  // Io on malformed input

std::string to_csv(const CsvTable& t);
CsvTable parse_csv(const std::string& text);
void write_csv(const std::filesystem::path& path, const CsvTable& t);
CsvTable read_csv(const std::filesystem::path& path);

/// Structured-grid text: "dims", "origin" and "spacing" header lines, then
/// one value per line with k fastest.
void write_field(const std::filesystem::path& path, const ScalarField& f);
ScalarField read_field(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace hmcf
