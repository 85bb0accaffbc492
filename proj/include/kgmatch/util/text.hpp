#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace kgmatch {

// Shortest of "%.{digits}g"; used for every decimal written to a report or
// alignment file so that outputs are byte-stable.
std::string formatDecimal(double value, int significant_digits = 10);

// Parses a full decimal string; throws kgmatch::Error on trailing garbage.
double parseDecimal(std::string_view text);

std::string_view trim(std::string_view s);

// RFC 4180 field quoting: quoted only when the field contains a comma,
// quote, CR or LF.
std::string csvField(std::string_view field);

void writeCsvRow(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace kgmatch
