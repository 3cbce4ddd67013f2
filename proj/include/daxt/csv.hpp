#pragma once

#include <string>
#include <vector>

namespace daxt {

// Minimal CSV support: comma-separated, '\n' rows, RFC-style quoting only
// when a field needs it. Enough for SPADL exports and the pipeline's tables.
namespace csv {

std::vector<std::string> split_line(const std::string& line);
std::string escape(const std::string& field);
std::string join(const std::vector<std::string>& fields);

// Splits CSV text into rows of fields; strips a trailing '\r' per line.
std::vector<std::vector<std::string>> parse_rows(const std::string& text);

// Whole-file reader; strips a trailing '\r' per line. Throws IoError if the
// file cannot be opened.
std::vector<std::vector<std::string>> read_rows(const std::string& path);

} // namespace csv

} // namespace daxt
