// Small RFC-4180-style CSV reader/writer. Quoted fields may contain commas,
// doubled quotes, and newlines.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "talkshare/model.hpp"

namespace talkshare::detail {

struct CsvRow {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line the row starts on
};

std::vector<CsvRow> parse_csv(const std::string& text);

// Quotes a field when it contains a comma, quote, or newline.
std::string csv_quote(const std::string& field);
std::string csv_join(const std::vector<std::string>& fields);

// Strict numeric parsing; the whole token must be consumed.
double parse_double(const std::string& token, const std::string& context);
long long parse_int(const std::string& token, const std::string& context);

// Shortest round-trip decimal form of a double.
std::string format_double(double value);

std::string read_file(const std::string& path);

}  // namespace talkshare::detail
