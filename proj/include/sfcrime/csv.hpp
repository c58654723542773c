#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sfcrime/common.hpp"

namespace sfcrime {

// RFC-4180 style CSV reader over an in-memory buffer: quoted fields may
// contain commas, doubled quotes, and newlines. Records are split on LF or
// CRLF outside quotes.
class CsvReader {
public:
    explicit CsvReader(std::string text);

    // Reads one record into fields; returns false at end of input.
    bool next_record(std::vector<std::string>& fields);

    // 1-based physical line on which the last returned record started.
    std::size_t record_line() const { return record_line_; }

private:
    std::string text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t record_line_ = 0;
};

// Loads a whole file; throws DataError if unreadable.
std::string read_file(const std::string& path);

// Field quoting for CSV output (only quotes when the field needs it).
std::string csv_escape(std::string_view field);

}  // namespace sfcrime
