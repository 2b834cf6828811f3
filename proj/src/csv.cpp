#include "moloconv/csv.hpp"

#include <cstdio>

namespace moloconv {

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drops the sign of -0
  char buf[40];
  // printf rounds the exact binary value; ties go to even under the default rounding mode.
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) out << ',';
    out << cells[k];
  }
  out << '\n';
}

}  // namespace moloconv
