#include "hcensor/csv.hpp"

#include <cstdio>
#include <stdexcept>

#include "hcensor/errors.hpp"

namespace hcensor {

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path), columns_(header.size()) {
  if (!out_) throw ConfigError("csv: cannot open '" + path + "' for writing");
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out_ << ",";
    out_ << header[i];
  }
  out_ << "\n";
}

std::string CsvWriter::format(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_)
    throw std::logic_error("csv: row width does not match header");
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ",";
    out_ << format(values[i]);
  }
  out_ << "\n";
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
  if (values.size() != columns_)
    throw std::logic_error("csv: row width does not match header");
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ",";
    out_ << values[i];
  }
  out_ << "\n";
}

}  // namespace hcensor
