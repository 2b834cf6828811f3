#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace moloconv {

/// 12 significant digits, '.' decimal point, no grouping. -0 prints as 0.
std::string format_number(double x);

/// Writes one comma-joined line.
void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace moloconv
