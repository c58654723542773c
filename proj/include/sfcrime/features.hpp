#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sfcrime/common.hpp"
#include "sfcrime/ingest.hpp"
#include "sfcrime/pca.hpp"

namespace sfcrime {

// Deterministic categorical encodings. All three maps index alphabetically;
// the category order doubles as the submission column order.
struct EncodingMaps {
    std::map<std::string, int> district_index;
    std::map<std::string, int> weekday_index;
    std::map<std::string, int> category_index;

    // Category names in index order (alphabetical).
    std::vector<std::string> category_names() const;
    std::vector<std::string> district_names() const;
};

// Engineered numeric features plus per-column metadata. labels is empty for
// unlabeled (test) data; num_classes comes from the category encoding.
struct FeatureMatrix {
    Matrix values;
    std::vector<std::string> column_names;
    std::vector<int> labels;
    std::size_t num_classes = 0;

    std::size_t rows() const { return values.rows(); }
    std::size_t cols() const { return values.cols(); }
    bool has_labels() const { return !labels.empty(); }
};

inline constexpr std::size_t kBaseColumnCount = 8;
extern const std::array<std::string, kBaseColumnCount> kBaseColumnNames;

// Leading number of a "<number> Block of <street>" address ("Block of"
// matched case-insensitively); 0 for any other shape. Total over all strings.
long long extract_street_number(std::string_view address);

// 1 iff the address contains "block" as a whole alphanumeric word,
// case-insensitively. Total over all strings.
int extract_block_flag(std::string_view address);

// Builds encodings from train rows (categories required on every row).
EncodingMaps fit_encodings(const std::vector<RawIncident>& rows);

// Assembles the 8 base columns (hour, month, district, day_of_week,
// longitude, latitude, street_no, block), appending pca scores when a model
// is given. Labels are populated iff the rows carry categories.
FeatureMatrix build_feature_matrix(const std::vector<RawIncident>& rows,
                                   const EncodingMaps& maps,
                                   const PcaModel* pca = nullptr);

// Appends pca score columns to a base-column matrix.
FeatureMatrix append_pca(FeatureMatrix base, const PcaModel& pca);

// CSV export: header = column_names, one row per incident.
void write_feature_csv(const FeatureMatrix& features, const std::string& path,
                       bool include_labels = false);

// Reads a CSV written by write_feature_csv (exact round-trip).
FeatureMatrix read_feature_csv(const std::string& path, std::size_t num_classes);

}  // namespace sfcrime
