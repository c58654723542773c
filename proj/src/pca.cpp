#include "sfcrime/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace sfcrime {

namespace {

// Neumaier-compensated sum; keeps column statistics stable on long inputs.
double compensated_sum(const Matrix& data, std::size_t col,
                       const std::function<double(double)>& term) {
    double sum = 0.0;
    double correction = 0.0;
    for (std::size_t r = 0; r < data.rows(); ++r) {
        const double value = term(data(r, col));
        const double t = sum + value;
        if (std::abs(sum) >= std::abs(value)) {
            correction += (sum - t) + value;
        } else {
            correction += (value - t) + sum;
        }
        sum = t;
    }
    return sum + correction;
}

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Returns eigenvalues
// in `values` and eigenvectors as rows of `vectors`.
void jacobi_eigen(Matrix a, std::vector<double>& values, Matrix& vectors) {
    const std::size_t d = a.rows();
    vectors = Matrix(d, d);
    for (std::size_t i = 0; i < d; ++i) vectors(i, i) = 1.0;

    constexpr double kTolerance = 1e-12;
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) off += 2.0 * a(p, q) * a(p, q);
        }
        if (std::sqrt(off) < kTolerance) break;
        if (sweep == kMaxSweeps - 1) {
            throw NumericError("jacobi eigendecomposition did not converge");
        }

        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t i = 0; i < d; ++i) {
                    const double aip = a(i, p);
                    const double aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < d; ++i) {
                    const double api = a(p, i);
                    const double aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
                for (std::size_t i = 0; i < d; ++i) {
                    const double vpi = vectors(p, i);
                    const double vqi = vectors(q, i);
                    vectors(p, i) = c * vpi - s * vqi;
                    vectors(q, i) = s * vpi + c * vqi;
                }
            }
        }
    }
    values.resize(d);
    for (std::size_t i = 0; i < d; ++i) values[i] = a(i, i);
}

void apply_sign_convention(Matrix& components) {
    for (std::size_t r = 0; r < components.rows(); ++r) {
        auto row = components.row(r);
        std::size_t best = 0;
        for (std::size_t i = 1; i < row.size(); ++i) {
            if (std::abs(row[i]) > std::abs(row[best])) best = i;
        }
        if (row[best] < 0.0) {
            for (auto& v : row) v = -v;
        }
    }
}

}  // namespace

PcaModel pca_fit(const Matrix& data, std::size_t k) {
    const std::size_t n = data.rows();
    const std::size_t d = data.cols();
    if (k < 1 || k > d) {
        throw ParamError("pca component count must be in [1, " + std::to_string(d) +
                         "], got " + std::to_string(k));
    }
    if (n < 2) throw ParamError("pca_fit requires at least 2 rows");
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            if (!std::isfinite(data(r, c))) {
                throw NumericError("non-finite value at row " + std::to_string(r) +
                                   " column " + std::to_string(c));
            }
        }
    }

    PcaModel model;
    model.mean.resize(d);
    model.scale.resize(d);
    for (std::size_t c = 0; c < d; ++c) {
        model.mean[c] = compensated_sum(data, c, [](double x) { return x; }) /
                        static_cast<double>(n);
        const double mean = model.mean[c];
        const double ss = compensated_sum(
            data, c, [mean](double x) { return (x - mean) * (x - mean); });
        const double variance = ss / static_cast<double>(n - 1);
        if (variance <= 0.0) {
            model.scale[c] = 1.0;
            model.constant_columns.push_back(c);
        } else {
            model.scale[c] = std::sqrt(variance);
        }
    }

    // Standardize, then take the sample covariance (the correlation matrix
    // of the non-constant columns).
    Matrix z(n, d);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            z(r, c) = (data(r, c) - model.mean[c]) / model.scale[c];
        }
    }
    Matrix cov(d, d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = a; b < d; ++b) {
            double sum = 0.0;
            double correction = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                const double value = z(r, a) * z(r, b);
                const double t = sum + value;
                if (std::abs(sum) >= std::abs(value)) {
                    correction += (sum - t) + value;
                } else {
                    correction += (value - t) + sum;
                }
                sum = t;
            }
            const double c = (sum + correction) / static_cast<double>(n - 1);
            cov(a, b) = c;
            cov(b, a) = c;
        }
    }

    std::vector<double> eigenvalues;
    Matrix eigenvectors;
    jacobi_eigen(std::move(cov), eigenvalues, eigenvectors);

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return eigenvalues[a] > eigenvalues[b];
    });

    model.components = Matrix(k, d);
    model.explained_variance.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t src = order[i];
        model.explained_variance[i] = std::max(0.0, eigenvalues[src]);
        for (std::size_t c = 0; c < d; ++c) model.components(i, c) = eigenvectors(src, c);
    }
    apply_sign_convention(model.components);
    return model;
}

Matrix pca_transform(const PcaModel& model, const Matrix& data) {
    const std::size_t d = model.dim();
    const std::size_t k = model.component_count();
    if (data.cols() != d) {
        throw ParamError("pca_transform dimension mismatch: model has " + std::to_string(d) +
                         " columns, data has " + std::to_string(data.cols()));
    }
    Matrix scores(data.rows(), k);
    std::vector<double> standardized(d);
    for (std::size_t r = 0; r < data.rows(); ++r) {
        auto row = data.row(r);
        for (std::size_t c = 0; c < d; ++c) {
            standardized[c] = (row[c] - model.mean[c]) / model.scale[c];
        }
        for (std::size_t i = 0; i < k; ++i) {
            auto axis = model.components.row(i);
            double dot = 0.0;
            for (std::size_t c = 0; c < d; ++c) dot += standardized[c] * axis[c];
            scores(r, i) = dot;
        }
    }
    return scores;
}

Matrix pca_inverse_transform(const PcaModel& model, const Matrix& scores) {
    const std::size_t d = model.dim();
    const std::size_t k = model.component_count();
    if (scores.cols() != k) {
        throw ParamError("pca_inverse_transform expects " + std::to_string(k) +
                         " score columns, got " + std::to_string(scores.cols()));
    }
    Matrix out(scores.rows(), d);
    for (std::size_t r = 0; r < scores.rows(); ++r) {
        auto score = scores.row(r);
        auto row = out.row(r);
        for (std::size_t c = 0; c < d; ++c) {
            double z = 0.0;
            for (std::size_t i = 0; i < k; ++i) z += score[i] * model.components(i, c);
            row[c] = model.mean[c] + model.scale[c] * z;
        }
    }
    return out;
}

namespace {

void write_vector(std::ostringstream& out, const char* key, const std::vector<double>& values) {
    out << key;
    for (double v : values) out << ' ' << format_double(v);
    out << '\n';
}

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string token;
    while (in >> token) tokens.push_back(token);
    return tokens;
}

const std::vector<std::string>& expect_line(const std::vector<std::string>& lines,
                                            std::size_t pos) {
    if (pos >= lines.size()) throw DataError("truncated pca model document");
    static thread_local std::vector<std::string> tokens;
    tokens = split_tokens(lines[pos]);
    return tokens;
}

std::vector<double> parse_vector(const std::vector<std::string>& tokens, const char* key,
                                 std::size_t expected) {
    if (tokens.empty() || tokens[0] != key || tokens.size() != expected + 1) {
        throw DataError(std::string("malformed pca model line, expected '") + key + "'");
    }
    std::vector<double> values;
    values.reserve(expected);
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        values.push_back(parse_double(tokens[i], key));
    }
    return values;
}

}  // namespace

std::string pca_serialize(const PcaModel& model) {
    std::ostringstream out;
    out << "pca_model 1\n";
    out << "dim " << model.dim() << '\n';
    out << "components " << model.component_count() << '\n';
    write_vector(out, "mean", model.mean);
    write_vector(out, "scale", model.scale);
    for (std::size_t i = 0; i < model.component_count(); ++i) {
        out << "axis " << i;
        auto row = model.components.row(i);
        for (double v : row) out << ' ' << format_double(v);
        out << '\n';
    }
    write_vector(out, "explained_variance", model.explained_variance);
    out << "constant_columns " << model.constant_columns.size();
    for (std::size_t c : model.constant_columns) out << ' ' << c;
    out << '\n';
    return std::move(out).str();
}

PcaModel pca_deserialize_lines(const std::vector<std::string>& lines, std::size_t& pos) {
    auto header = expect_line(lines, pos++);
    if (header.size() != 2 || header[0] != "pca_model" || header[1] != "1") {
        throw DataError("not a pca model document");
    }
    auto dim_line = expect_line(lines, pos++);
    if (dim_line.size() != 2 || dim_line[0] != "dim") throw DataError("malformed pca 'dim' line");
    const std::size_t d = static_cast<std::size_t>(parse_integer(dim_line[1], "dim"));
    auto k_line = expect_line(lines, pos++);
    if (k_line.size() != 2 || k_line[0] != "components") {
        throw DataError("malformed pca 'components' line");
    }
    const std::size_t k = static_cast<std::size_t>(parse_integer(k_line[1], "components"));

    PcaModel model;
    model.mean = parse_vector(expect_line(lines, pos++), "mean", d);
    model.scale = parse_vector(expect_line(lines, pos++), "scale", d);
    model.components = Matrix(k, d);
    for (std::size_t i = 0; i < k; ++i) {
        auto tokens = expect_line(lines, pos++);
        if (tokens.size() != d + 2 || tokens[0] != "axis" ||
            tokens[1] != std::to_string(i)) {
            throw DataError("malformed pca 'axis' line");
        }
        for (std::size_t c = 0; c < d; ++c) {
            model.components(i, c) = parse_double(tokens[c + 2], "axis");
        }
    }
    model.explained_variance =
        parse_vector(expect_line(lines, pos++), "explained_variance", k);
    auto const_line = expect_line(lines, pos++);
    if (const_line.size() < 2 || const_line[0] != "constant_columns") {
        throw DataError("malformed pca 'constant_columns' line");
    }
    const std::size_t count =
        static_cast<std::size_t>(parse_integer(const_line[1], "constant_columns"));
    if (const_line.size() != count + 2) {
        throw DataError("malformed pca 'constant_columns' line");
    }
    for (std::size_t i = 0; i < count; ++i) {
        model.constant_columns.push_back(
            static_cast<std::size_t>(parse_integer(const_line[i + 2], "constant_columns")));
    }
    return model;
}

PcaModel pca_deserialize(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    std::size_t pos = 0;
    return pca_deserialize_lines(lines, pos);
}

}  // namespace sfcrime
