#include "phsim/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace phsim {

namespace {

void write_line(std::ofstream& out, const Eigen::VectorXd& v, int begin,
                int count, int stride, int precision) {
  std::string line;
  for (int k = 0; k < count; ++k) {
    if (k) line += ',';
    line += format_csv_value(v[begin + k * stride], precision);
  }
  line += '\n';
  out << line;
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  return out;
}

}  // namespace

int csv_precision() {
  static bool warned = false;
  const char* env = std::getenv("PHSIM_CSV_PRECISION");
  if (env == nullptr || *env == '\0') return 17;
  char* end = nullptr;
  long value = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || value < 1 || value > 17) {
    if (!warned) {
      std::cerr << "phsim: ignoring invalid PHSIM_CSV_PRECISION value '" << env
                << "' (expected an integer in [1, 17])\n";
      warned = true;
    }
    return 17;
  }
  return static_cast<int>(value);
}

std::string format_csv_value(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

void write_csv(const Field2D& f, const std::string& path) {
  f.require_finite("write_csv");
  const Grid2D& g = f.grid();
  const int precision = csv_precision();
  std::ofstream out = open_csv(path);
  for (int j = 0; j < g.n2; ++j) {
    write_line(out, f.values(), g.index(0, j), g.n1, 1, precision);
  }
}

void write_csv(const Field1D& f, const std::string& path) {
  f.require_finite("write_csv");
  const int precision = csv_precision();
  std::ofstream out = open_csv(path);
  write_line(out, f.values(), 0, f.size(), 1, precision);
}

struct CsvRowWriter::Impl {
  std::ofstream out;
  int precision = 17;
};

CsvRowWriter::CsvRowWriter(const std::string& path, const std::string& header)
    : impl_(new Impl) {
  impl_->out = open_csv(path);
  impl_->precision = csv_precision();
  impl_->out << header << '\n';
}

CsvRowWriter::~CsvRowWriter() { delete impl_; }

void CsvRowWriter::write_row(const double* values, int count) {
  std::string line;
  for (int k = 0; k < count; ++k) {
    if (k) line += ',';
    line += format_csv_value(values[k], impl_->precision);
  }
  line += '\n';
  impl_->out << line;
}

void CsvRowWriter::write_row(const std::vector<double>& values) {
  write_row(values.data(), static_cast<int>(values.size()));
}

void CsvRowWriter::close() {
  if (impl_->out.is_open()) impl_->out.close();
}

}  // namespace phsim
