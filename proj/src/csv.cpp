#include "sta/csv.hpp"

#include <cstdio>

#include "sta/error.hpp"

namespace sta {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : out_(path, std::ios::binary | std::ios::trunc), columns_(columns.size()), path_(path) {
  if (!out_) throw Error("cannot create '" + path + "'");
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) {
  if (values.size() != columns_) throw Error("CSV row width does not match header of '" + path_ + "'");
  bool first = true;
  for (double v : values) {
    out_ << (first ? "" : ",") << format_number(v);
    first = false;
  }
  out_ << '\n';
}

}  // namespace sta
