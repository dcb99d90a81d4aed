#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace divscore::dataio {

using CsvRow = std::vector<std::string>;

// Splits one CSV record. Double-quoted fields may contain commas and "" escapes.
CsvRow split_csv_line(std::string_view line);

// Parses a whole document. Blank lines and lines starting with '#' are skipped;
// CRLF endings are accepted.
std::vector<CsvRow> parse_csv(std::string_view text);

std::string csv_escape(std::string_view field);
std::string join_csv(const CsvRow& row);

// Shortest round-trippable text for a double.
std::string format_double(double v);

} // namespace divscore::dataio
