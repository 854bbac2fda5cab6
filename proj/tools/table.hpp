// Tabular and key-value output for the command-line tool.
//
// Floats carry 12 significant digits, in plain decimal when
// 1e-4 <= |x| < 1e6 and in scientific notation otherwise, with trailing
// zeros removed. CSV uses a header row, ',' separators and LF endings.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace qclone::cli {

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

std::string format_number(double x);
std::string format_cell(const Cell& c);

/// Empty -> monostate, integer literal -> int64, other number -> double,
/// anything else -> string.
Cell parse_cell(std::string_view text);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

using Record = std::vector<std::pair<std::string, Cell>>;

/// Throws std::invalid_argument if a field contains ',' or a newline.
std::string to_csv(const Table& t);
std::string to_text(const Table& t);
std::string to_csv(const Record& r);
std::string to_text(const Record& r);

/// Inverse of to_csv(const Table&). Throws std::invalid_argument on ragged
/// rows or a missing header.
Table parse_csv(std::string_view text);

}  // namespace qclone::cli
