#include "sts/csv.hpp"

#include <cmath>
#include <cstdio>

namespace sts::csv {

std::string num(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::string num_or_empty(double v) { return std::isfinite(v) ? num(v) : std::string(); }

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << fields[i];
  }
  os << '\n';
}

}  // namespace sts::csv
