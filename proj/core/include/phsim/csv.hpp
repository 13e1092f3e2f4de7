#pragma once

#include <string>
#include <vector>

#include "phsim/field.hpp"

namespace phsim {

/// Significant digits used when printing CSV values. Defaults to 17 (lossless
/// for double). The environment variable PHSIM_CSV_PRECISION overrides it with
/// an integer in [1, 17]; invalid values are ignored with a warning on stderr.
int csv_precision();

/// One number rendered with %.*g, locale independent.
std::string format_csv_value(double v, int precision);

/// Field serialization. 2D fields become one row per z2 = const grid line
/// (row r holds nodes (0, r) .. (n1 - 1, r) ordered by z1); 1D fields become a
/// single row. Separator ",", line ending "\n", UTF-8, no header.
void write_csv(const Field2D& f, const std::string& path);
void write_csv(const Field1D& f, const std::string& path);

/// Streaming writer for row-per-record tables (trajectory logs, edge traces).
class CsvRowWriter {
 public:
  /// Opens the file, truncating, and writes the header line as given.
  CsvRowWriter(const std::string& path, const std::string& header);
  ~CsvRowWriter();

  CsvRowWriter(const CsvRowWriter&) = delete;
  CsvRowWriter& operator=(const CsvRowWriter&) = delete;

  void write_row(const double* values, int count);
  void write_row(const std::vector<double>& values);
  void close();

 private:
  struct Impl;
  Impl* impl_;
};

}  // namespace phsim
