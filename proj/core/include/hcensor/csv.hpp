#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace hcensor {

// Minimal deterministic CSV writer: fixed header, %.12g numbers.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  void row(const std::vector<double>& values);
  void row_mixed(const std::vector<std::string>& values);
  void flush() { out_.flush(); }

  static std::string format(double value);

 private:
  std::ofstream out_;
  size_t columns_;
};

}  // namespace hcensor
