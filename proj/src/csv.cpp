#include "sfcrime/csv.hpp"

#include <fstream>
#include <sstream>

namespace sfcrime {

CsvReader::CsvReader(std::string text) : text_(std::move(text)) {}

bool CsvReader::next_record(std::vector<std::string>& fields) {
    fields.clear();
    if (pos_ >= text_.size()) return false;
    record_line_ = line_;

    std::string field;
    bool in_quotes = false;
    while (pos_ < text_.size()) {
        const char c = text_[pos_];
        if (in_quotes) {
            if (c == '"') {
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') {
                    field.push_back('"');
                    pos_ += 2;
                } else {
                    in_quotes = false;
                    ++pos_;
                }
            } else {
                if (c == '\n') ++line_;
                field.push_back(c);
                ++pos_;
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                ++pos_;
                break;
            case ',':
                fields.push_back(std::move(field));
                field.clear();
                ++pos_;
                break;
            case '\r':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') ++pos_;
                [[fallthrough]];
            case '\n':
                ++pos_;
                ++line_;
                fields.push_back(std::move(field));
                return true;
            default:
                field.push_back(c);
                ++pos_;
                break;
        }
    }
    if (in_quotes) {
        throw DataError("unterminated quoted field starting near line " +
                        std::to_string(record_line_));
    }
    fields.push_back(std::move(field));
    return true;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw DataError("failed to read file: " + path);
    return std::move(buffer).str();
}

std::string csv_escape(std::string_view field) {
    const bool needs_quotes =
        field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace sfcrime
