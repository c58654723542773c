#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sfcrime/common.hpp"

namespace sfcrime {

struct Timestamp {
    int year = 0;
    int month = 0;   // 1..12
    int day = 0;     // 1..31
    int hour = 0;    // 0..23
    int minute = 0;  // 0..59
    int second = 0;  // 0..59

    bool operator==(const Timestamp&) const = default;
};

// One parsed row of the Kaggle SF-crime schema. Train rows carry a category
// and no id; test rows carry an id and no category.
struct RawIncident {
    Timestamp time;
    std::optional<std::string> category;
    std::string day_of_week;
    std::string district;
    std::optional<std::string> resolution;  // train only, dropped downstream
    std::string address;
    double longitude = 0.0;  // X
    double latitude = 0.0;   // Y
    std::optional<long long> id;  // test only
};

struct DatasetSummary {
    std::size_t row_count = 0;
    std::map<std::string, std::size_t> category_counts;
    std::map<std::string, std::size_t> district_counts;
    std::size_t unique_address_count = 0;
    std::size_t block_count = 0;
    std::size_t non_block_count = 0;
    std::array<std::size_t, 24> hour_histogram{};
    std::array<std::size_t, 7> weekday_histogram{};  // Monday..Sunday
    std::size_t street_no_zero_count = 0;
    std::size_t street_no_distinct_nonzero = 0;
};

// Canonical weekday names, Monday first.
extern const std::array<std::string, 7> kWeekdayNames;

// Index into kWeekdayNames, or -1 when the name is not canonical.
int weekday_ordinal(const std::string& name);

// Parses "YYYY-mm-dd hh:MM:ss" with per-field range checks.
Timestamp parse_timestamp(std::string_view text);

// Inverse of parse_timestamp.
std::string format_timestamp(const Timestamp& ts);

// Weekday of the date per the civil calendar, or -1 if the date is not a
// real calendar day (e.g. Feb 30).
int calendar_weekday(const Timestamp& ts);

struct LoadOptions {
    // Drop rows with latitude >= 38.0 (a known artifact of this dataset).
    bool filter_outliers = false;
    // Cap on weekday-mismatch warnings written to stderr.
    std::size_t max_warnings = 5;
};

// Schema: Dates,Category,Descript,DayOfWeek,PdDistrict,Resolution,Address,X,Y
std::vector<RawIncident> load_train(const std::string& path, const LoadOptions& opts = {});

// Schema: Id,Dates,DayOfWeek,PdDistrict,Address,X,Y
std::vector<RawIncident> load_test(const std::string& path, const LoadOptions& opts = {});

DatasetSummary summarize(const std::vector<RawIncident>& rows);

// Text rendering of the summary: district and category tables sorted by
// descending count, hour/weekday histograms, block and street-number stats.
std::string render_summary(const DatasetSummary& summary);

}  // namespace sfcrime
