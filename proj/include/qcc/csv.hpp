#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace qcc {

/// %.17g, with "nan", "inf", "-inf" for non-finite values.
std::string format_double(double x);

/// Comma-separated rows with a header; '.' decimal separator regardless of
/// the global locale.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header);

  void row(std::initializer_list<double> values);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace qcc
