// Deterministic CSV output: fixed 17-significant-digit scientific notation,
// LF line terminator, non-finite values rendered as empty cells so a flag
// column can mark them instead of leaking NaN into data.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sts::csv {

// 17 significant digits, canonical zero (no "-0").
std::string num(double v);

// Empty cell when the value is not finite.
std::string num_or_empty(double v);

void write_row(std::ostream& os, const std::vector<std::string>& fields);

}  // namespace sts::csv
