#include "sfcrime/ingest.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "sfcrime/csv.hpp"
#include "sfcrime/features.hpp"

namespace sfcrime {

const std::array<std::string, 7> kWeekdayNames = {
    "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"};

int weekday_ordinal(const std::string& name) {
    for (std::size_t i = 0; i < kWeekdayNames.size(); ++i) {
        if (kWeekdayNames[i] == name) return static_cast<int>(i);
    }
    return -1;
}

namespace {

int parse_fixed_digits(std::string_view text, std::size_t pos, std::size_t count) {
    int value = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const char c = text[pos + i];
        if (c < '0' || c > '9') {
            throw DataError("malformed timestamp '" + std::string(text) + "'");
        }
        value = value * 10 + (c - '0');
    }
    return value;
}

void require_char(std::string_view text, std::size_t pos, char expected) {
    if (text[pos] != expected) {
        throw DataError("malformed timestamp '" + std::string(text) + "'");
    }
}

void check_range(int value, int lo, int hi, const char* field, std::string_view text) {
    if (value < lo || value > hi) {
        throw DataError("timestamp field " + std::string(field) + " out of range in '" +
                        std::string(text) + "'");
    }
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
    // Fixed layout: YYYY-mm-dd hh:MM:ss
    if (text.size() != 19) {
        throw DataError("malformed timestamp '" + std::string(text) + "'");
    }
    Timestamp ts;
    ts.year = parse_fixed_digits(text, 0, 4);
    require_char(text, 4, '-');
    ts.month = parse_fixed_digits(text, 5, 2);
    require_char(text, 7, '-');
    ts.day = parse_fixed_digits(text, 8, 2);
    require_char(text, 10, ' ');
    ts.hour = parse_fixed_digits(text, 11, 2);
    require_char(text, 13, ':');
    ts.minute = parse_fixed_digits(text, 14, 2);
    require_char(text, 16, ':');
    ts.second = parse_fixed_digits(text, 17, 2);

    check_range(ts.month, 1, 12, "month", text);
    check_range(ts.day, 1, 31, "day", text);
    check_range(ts.hour, 0, 23, "hour", text);
    check_range(ts.minute, 0, 59, "minute", text);
    check_range(ts.second, 0, 59, "second", text);
    return ts;
}

std::string format_timestamp(const Timestamp& ts) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d %02d:%02d:%02d", ts.year, ts.month,
                  ts.day, ts.hour, ts.minute, ts.second);
    return std::string(buf);
}

int calendar_weekday(const Timestamp& ts) {
    using namespace std::chrono;
    const year_month_day ymd{year{ts.year}, month{static_cast<unsigned>(ts.month)},
                             day{static_cast<unsigned>(ts.day)}};
    if (!ymd.ok()) return -1;
    const weekday wd{sys_days{ymd}};
    // iso_encoding: Monday=1..Sunday=7.
    return static_cast<int>(wd.iso_encoding()) - 1;
}

namespace {

const std::vector<std::string> kTrainHeader = {
    "Dates", "Category", "Descript", "DayOfWeek", "PdDistrict",
    "Resolution", "Address", "X", "Y"};
const std::vector<std::string> kTestHeader = {
    "Id", "Dates", "DayOfWeek", "PdDistrict", "Address", "X", "Y"};

void strip_utf8_bom(std::string& field) {
    if (field.size() >= 3 && field.compare(0, 3, "\xEF\xBB\xBF") == 0) {
        field.erase(0, 3);
    }
}

void check_header(const std::vector<std::string>& fields,
                  const std::vector<std::string>& expected, const std::string& path) {
    if (fields != expected) {
        std::string want;
        for (const auto& f : expected) {
            if (!want.empty()) want.push_back(',');
            want += f;
        }
        std::string got;
        for (const auto& f : fields) {
            if (!got.empty()) got.push_back(',');
            got += f;
        }
        throw DataError("schema error in " + path + ": expected header '" + want +
                        "', got '" + got + "'");
    }
}

struct WarningSink {
    std::size_t limit;
    std::size_t seen = 0;

    void warn_weekday(const std::string& path, std::size_t line, const std::string& stated,
                      int actual) {
        ++seen;
        if (seen <= limit) {
            std::cerr << "warning: " << path << " line " << line << ": DayOfWeek '"
                      << stated << "' does not match the date ("
                      << (actual >= 0 ? kWeekdayNames[static_cast<std::size_t>(actual)]
                                      : std::string("invalid date"))
                      << ")\n";
        }
    }

    void flush(const std::string& path) {
        if (seen > limit) {
            std::cerr << "warning: " << path << ": " << (seen - limit)
                      << " further DayOfWeek mismatches suppressed\n";
        }
    }
};

RawIncident parse_common(const std::string& path, std::size_t line, std::string&& dates,
                         std::string&& day_of_week, std::string&& district,
                         std::string&& address, const std::string& x, const std::string& y,
                         WarningSink& warnings) {
    RawIncident row;
    try {
        row.time = parse_timestamp(dates);
        row.longitude = parse_double(x, "X");
        row.latitude = parse_double(y, "Y");
    } catch (const DataError& e) {
        throw DataError(path + " line " + std::to_string(line) + ": " + e.what());
    }
    if (weekday_ordinal(day_of_week) < 0) {
        throw DataError(path + " line " + std::to_string(line) + ": unknown DayOfWeek '" +
                        day_of_week + "'");
    }
    if (district.empty()) {
        throw DataError(path + " line " + std::to_string(line) + ": empty PdDistrict");
    }
    const int actual = calendar_weekday(row.time);
    if (actual != weekday_ordinal(day_of_week)) {
        warnings.warn_weekday(path, line, day_of_week, actual);
    }
    row.day_of_week = std::move(day_of_week);
    row.district = std::move(district);
    row.address = std::move(address);
    return row;
}

bool keep_row(const RawIncident& row, const LoadOptions& opts) {
    return !opts.filter_outliers || row.latitude < 38.0;
}

}  // namespace

std::vector<RawIncident> load_train(const std::string& path, const LoadOptions& opts) {
    CsvReader reader(read_file(path));
    std::vector<std::string> fields;
    if (!reader.next_record(fields)) {
        throw DataError("schema error in " + path + ": empty file");
    }
    if (!fields.empty()) strip_utf8_bom(fields.front());
    check_header(fields, kTrainHeader, path);

    std::vector<RawIncident> rows;
    WarningSink warnings{opts.max_warnings};
    while (reader.next_record(fields)) {
        const std::size_t line = reader.record_line();
        if (fields.size() == 1 && fields[0].empty()) continue;  // trailing blank line
        if (fields.size() != kTrainHeader.size()) {
            throw DataError(path + " line " + std::to_string(line) + ": expected " +
                            std::to_string(kTrainHeader.size()) + " fields, got " +
                            std::to_string(fields.size()));
        }
        // Descript (fields[2]) is read and discarded.
        RawIncident row = parse_common(path, line, std::move(fields[0]), std::move(fields[3]),
                                       std::move(fields[4]), std::move(fields[6]), fields[7],
                                       fields[8], warnings);
        row.category = std::move(fields[1]);
        if (row.category->empty()) {
            throw DataError(path + " line " + std::to_string(line) + ": empty Category");
        }
        row.resolution = std::move(fields[5]);
        if (keep_row(row, opts)) rows.push_back(std::move(row));
    }
    warnings.flush(path);
    return rows;
}

std::vector<RawIncident> load_test(const std::string& path, const LoadOptions& opts) {
    CsvReader reader(read_file(path));
    std::vector<std::string> fields;
    if (!reader.next_record(fields)) {
        throw DataError("schema error in " + path + ": empty file");
    }
    if (!fields.empty()) strip_utf8_bom(fields.front());
    check_header(fields, kTestHeader, path);

    std::vector<RawIncident> rows;
    std::unordered_set<long long> seen_ids;
    WarningSink warnings{opts.max_warnings};
    while (reader.next_record(fields)) {
        const std::size_t line = reader.record_line();
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() != kTestHeader.size()) {
            throw DataError(path + " line " + std::to_string(line) + ": expected " +
                            std::to_string(kTestHeader.size()) + " fields, got " +
                            std::to_string(fields.size()));
        }
        long long id = 0;
        try {
            id = parse_integer(fields[0], "Id");
        } catch (const DataError& e) {
            throw DataError(path + " line " + std::to_string(line) + ": " + e.what());
        }
        if (id < 0) {
            throw DataError(path + " line " + std::to_string(line) + ": negative Id " +
                            std::to_string(id));
        }
        if (!seen_ids.insert(id).second) {
            throw DataError(path + " line " + std::to_string(line) + ": duplicate Id " +
                            std::to_string(id));
        }
        RawIncident row = parse_common(path, line, std::move(fields[1]), std::move(fields[2]),
                                       std::move(fields[3]), std::move(fields[4]), fields[5],
                                       fields[6], warnings);
        row.id = id;
        if (keep_row(row, opts)) rows.push_back(std::move(row));
    }
    warnings.flush(path);
    return rows;
}

DatasetSummary summarize(const std::vector<RawIncident>& rows) {
    DatasetSummary s;
    s.row_count = rows.size();
    std::set<std::string> addresses;
    std::set<long long> street_numbers;
    for (const auto& row : rows) {
        if (row.category) ++s.category_counts[*row.category];
        ++s.district_counts[row.district];
        addresses.insert(row.address);
        if (extract_block_flag(row.address) != 0) {
            ++s.block_count;
        } else {
            ++s.non_block_count;
        }
        const long long street_no = extract_street_number(row.address);
        if (street_no == 0) {
            ++s.street_no_zero_count;
        } else {
            street_numbers.insert(street_no);
        }
        ++s.hour_histogram[static_cast<std::size_t>(row.time.hour)];
        const int wd = weekday_ordinal(row.day_of_week);
        if (wd >= 0) ++s.weekday_histogram[static_cast<std::size_t>(wd)];
    }
    s.unique_address_count = addresses.size();
    s.street_no_distinct_nonzero = street_numbers.size();
    return s;
}

namespace {

std::string thousands(std::size_t n) {
    std::string digits = std::to_string(n);
    std::string out;
    const std::size_t len = digits.size();
    for (std::size_t i = 0; i < len; ++i) {
        if (i > 0 && (len - i) % 3 == 0) out.push_back(',');
        out.push_back(digits[i]);
    }
    return out;
}

// Rows sorted by descending count, ties broken alphabetically.
std::vector<std::pair<std::string, std::size_t>> sorted_desc(
    const std::map<std::string, std::size_t>& counts) {
    std::vector<std::pair<std::string, std::size_t>> rows(counts.begin(), counts.end());
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return rows;
}

void render_count_table(std::ostringstream& out, const std::string& title,
                        const std::vector<std::pair<std::string, std::size_t>>& rows) {
    std::size_t name_width = title.size();
    for (const auto& [name, count] : rows) name_width = std::max(name_width, name.size());
    out << title << "\n";
    for (const auto& [name, count] : rows) {
        out << "  " << name;
        out << std::string(name_width - name.size() + 2, ' ');
        out << thousands(count) << "\n";
    }
    out << "\n";
}

void render_histogram(std::ostringstream& out, const std::string& title,
                      const std::vector<std::pair<std::string, std::size_t>>& bins) {
    std::size_t max_count = 1;
    std::size_t label_width = 0;
    for (const auto& [label, count] : bins) {
        max_count = std::max(max_count, count);
        label_width = std::max(label_width, label.size());
    }
    out << title << "\n";
    constexpr std::size_t kBarWidth = 50;
    for (const auto& [label, count] : bins) {
        const std::size_t bar = count == 0 ? 0 : std::max<std::size_t>(1, count * kBarWidth / max_count);
        out << "  " << label << std::string(label_width - label.size() + 2, ' ');
        std::string count_text = thousands(count);
        out << count_text;
        out << std::string(count_text.size() < 12 ? 12 - count_text.size() : 1, ' ');
        out << std::string(bar, '#') << "\n";
    }
    out << "\n";
}

}  // namespace

std::string render_summary(const DatasetSummary& s) {
    std::ostringstream out;
    out << "Rows: " << thousands(s.row_count) << "\n\n";

    render_count_table(out, "Crimes per district", sorted_desc(s.district_counts));
    if (!s.category_counts.empty()) {
        render_count_table(out, "Crimes per category", sorted_desc(s.category_counts));
    }

    std::vector<std::pair<std::string, std::size_t>> hour_bins;
    for (std::size_t h = 0; h < s.hour_histogram.size(); ++h) {
        char label[6];
        std::snprintf(label, sizeof(label), "%02zu:00", h);
        hour_bins.emplace_back(label, s.hour_histogram[h]);
    }
    render_histogram(out, "Crimes per hour", hour_bins);

    std::vector<std::pair<std::string, std::size_t>> weekday_bins;
    for (std::size_t d = 0; d < kWeekdayNames.size(); ++d) {
        weekday_bins.emplace_back(kWeekdayNames[d], s.weekday_histogram[d]);
    }
    render_histogram(out, "Crimes per day of week", weekday_bins);

    out << "Unique addresses: " << thousands(s.unique_address_count) << "\n";
    out << "Block addresses: " << thousands(s.block_count) << "\n";
    out << "Non-block addresses: " << thousands(s.non_block_count) << "\n";
    out << "Rows without a street number: " << thousands(s.street_no_zero_count) << "\n";
    out << "Distinct nonzero street numbers: " << thousands(s.street_no_distinct_nonzero)
        << "\n";
    return std::move(out).str();
}

}  // namespace sfcrime
