#pragma once

#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace sta {

/// Comma-separated output: header line first, numbers with 12 significant
/// digits (printf "%.12g"), '\n' line endings.
class CsvWriter {
 public:
  /// Throws Error if the file cannot be created.
  CsvWriter(const std::string& path, const std::vector<std::string>& columns);

  void row(std::initializer_list<double> values);

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::string path_;
};

/// "%.12g"
std::string format_number(double v);

}  // namespace sta
