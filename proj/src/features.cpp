#include "sfcrime/features.hpp"

#include <cctype>
#include <fstream>

#include "sfcrime/csv.hpp"

namespace sfcrime {

const std::array<std::string, kBaseColumnCount> kBaseColumnNames = {
    "hour", "month", "district", "day_of_week",
    "longitude", "latitude", "street_no", "block"};

std::vector<std::string> EncodingMaps::category_names() const {
    std::vector<std::string> names(category_index.size());
    for (const auto& [name, index] : category_index) names[static_cast<std::size_t>(index)] = name;
    return names;
}

std::vector<std::string> EncodingMaps::district_names() const {
    std::vector<std::string> names(district_index.size());
    for (const auto& [name, index] : district_index) names[static_cast<std::size_t>(index)] = name;
    return names;
}

namespace {

bool is_word_char(unsigned char c) { return std::isalnum(c) != 0; }

char ascii_lower(unsigned char c) {
    return static_cast<char>(std::tolower(c));
}

bool match_word_ci(std::string_view text, std::size_t& pos, std::string_view word) {
    if (pos + word.size() > text.size()) return false;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (ascii_lower(static_cast<unsigned char>(text[pos + i])) != word[i]) return false;
    }
    pos += word.size();
    return true;
}

std::size_t skip_spaces(std::string_view text, std::size_t pos) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    return pos;
}

}  // namespace

long long extract_street_number(std::string_view address) {
    constexpr long long kCap = 1000000000000000LL;  // keeps the parse total on absurd inputs
    std::size_t pos = skip_spaces(address, 0);
    long long value = 0;
    std::size_t digits = 0;
    while (pos < address.size() && address[pos] >= '0' && address[pos] <= '9') {
        if (value < kCap) value = value * 10 + (address[pos] - '0');
        ++pos;
        ++digits;
    }
    if (digits == 0) return 0;
    if (pos >= address.size() || !std::isspace(static_cast<unsigned char>(address[pos]))) return 0;
    pos = skip_spaces(address, pos);
    if (!match_word_ci(address, pos, "block")) return 0;
    if (pos >= address.size() || !std::isspace(static_cast<unsigned char>(address[pos]))) return 0;
    pos = skip_spaces(address, pos);
    if (!match_word_ci(address, pos, "of")) return 0;
    if (pos < address.size() && is_word_char(static_cast<unsigned char>(address[pos]))) return 0;
    return value;
}

int extract_block_flag(std::string_view address) {
    std::size_t i = 0;
    while (i < address.size()) {
        if (!is_word_char(static_cast<unsigned char>(address[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < address.size() && is_word_char(static_cast<unsigned char>(address[i]))) ++i;
        if (i - start == 5) {
            std::size_t pos = start;
            if (match_word_ci(address, pos, "block")) return 1;
        }
    }
    return 0;
}

EncodingMaps fit_encodings(const std::vector<RawIncident>& rows) {
    EncodingMaps maps;
    for (std::size_t i = 0; i < kWeekdayNames.size(); ++i) {
        maps.weekday_index[kWeekdayNames[i]] = 0;  // index assigned below
    }
    for (const auto& row : rows) {
        if (!row.category) {
            throw ParamError("fit_encodings requires train rows; found a row without Category");
        }
        maps.category_index[*row.category] = 0;
        maps.district_index[row.district] = 0;
    }
    // std::map iterates alphabetically; enumeration order is the index.
    int index = 0;
    for (auto& [name, value] : maps.weekday_index) value = index++;
    index = 0;
    for (auto& [name, value] : maps.district_index) value = index++;
    index = 0;
    for (auto& [name, value] : maps.category_index) value = index++;
    return maps;
}

namespace {

int lookup(const std::map<std::string, int>& index, const std::string& value,
           const char* kind) {
    const auto it = index.find(value);
    if (it == index.end()) {
        throw DataError(std::string("unmapped ") + kind + " value '" + value + "'");
    }
    return it->second;
}

}  // namespace

FeatureMatrix build_feature_matrix(const std::vector<RawIncident>& rows,
                                   const EncodingMaps& maps, const PcaModel* pca) {
    FeatureMatrix out;
    out.num_classes = maps.category_index.size();
    out.column_names.assign(kBaseColumnNames.begin(), kBaseColumnNames.end());
    out.values = Matrix(rows.size(), kBaseColumnCount);

    std::size_t labeled = 0;
    for (const auto& row : rows) {
        if (row.category) ++labeled;
    }
    if (labeled != 0 && labeled != rows.size()) {
        throw DataError("mixed labeled and unlabeled rows in one feature matrix");
    }
    const bool with_labels = labeled == rows.size() && !rows.empty();
    if (with_labels) out.labels.reserve(rows.size());

    for (std::size_t r = 0; r < rows.size(); ++r) {
        const RawIncident& row = rows[r];
        auto values = out.values.row(r);
        values[0] = row.time.hour;
        values[1] = row.time.month;
        values[2] = lookup(maps.district_index, row.district, "district");
        values[3] = lookup(maps.weekday_index, row.day_of_week, "day_of_week");
        values[4] = row.longitude;
        values[5] = row.latitude;
        values[6] = static_cast<double>(extract_street_number(row.address));
        values[7] = extract_block_flag(row.address);
        if (with_labels) {
            out.labels.push_back(lookup(maps.category_index, *row.category, "category"));
        }
    }
    if (pca != nullptr) return append_pca(std::move(out), *pca);
    return out;
}

FeatureMatrix append_pca(FeatureMatrix base, const PcaModel& pca) {
    if (base.cols() != pca.dim()) {
        throw ParamError("pca model dimension " + std::to_string(pca.dim()) +
                         " does not match matrix column count " + std::to_string(base.cols()));
    }
    const Matrix scores = pca_transform(pca, base.values);
    const std::size_t k = scores.cols();
    Matrix combined(base.rows(), base.cols() + k);
    for (std::size_t r = 0; r < base.rows(); ++r) {
        auto src = base.values.row(r);
        auto extra = scores.row(r);
        auto dst = combined.row(r);
        std::copy(src.begin(), src.end(), dst.begin());
        std::copy(extra.begin(), extra.end(), dst.begin() + static_cast<std::ptrdiff_t>(base.cols()));
    }
    FeatureMatrix out = std::move(base);
    out.values = std::move(combined);
    for (std::size_t j = 1; j <= k; ++j) out.column_names.push_back("pca_" + std::to_string(j));
    return out;
}

void write_feature_csv(const FeatureMatrix& features, const std::string& path,
                       bool include_labels) {
    if (include_labels && !features.has_labels()) {
        throw ParamError("feature matrix has no labels to export");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open file for writing: " + path);
    for (std::size_t c = 0; c < features.column_names.size(); ++c) {
        if (c > 0) out << ',';
        out << csv_escape(features.column_names[c]);
    }
    if (include_labels) out << ",label";
    out << '\n';
    for (std::size_t r = 0; r < features.rows(); ++r) {
        auto row = features.values.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out << ',';
            out << format_double(row[c]);
        }
        if (include_labels) out << ',' << features.labels[r];
        out << '\n';
    }
    if (!out) throw DataError("failed while writing " + path);
}

FeatureMatrix read_feature_csv(const std::string& path, std::size_t num_classes) {
    CsvReader reader(read_file(path));
    std::vector<std::string> fields;
    if (!reader.next_record(fields) || fields.empty()) {
        throw DataError("empty feature csv: " + path);
    }
    FeatureMatrix out;
    bool has_label_column = fields.back() == "label";
    const std::size_t cols = fields.size() - (has_label_column ? 1 : 0);
    if (cols == 0) throw DataError("feature csv has no feature columns: " + path);
    out.column_names.assign(fields.begin(), fields.begin() + static_cast<std::ptrdiff_t>(cols));
    out.num_classes = num_classes;

    std::vector<double> data;
    std::size_t rows = 0;
    while (reader.next_record(fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() != cols + (has_label_column ? 1 : 0)) {
            throw DataError(path + " line " + std::to_string(reader.record_line()) +
                            ": inconsistent column count");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            data.push_back(parse_double(fields[c], out.column_names[c]));
        }
        if (has_label_column) {
            out.labels.push_back(static_cast<int>(parse_integer(fields[cols], "label")));
        }
        ++rows;
    }
    out.values = Matrix(rows, cols);
    out.values.data() = std::move(data);
    return out;
}

}  // namespace sfcrime
