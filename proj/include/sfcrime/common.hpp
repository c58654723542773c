#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sfcrime {

// Error taxonomy, mapped to CLI exit codes: ParamError -> 1 (usage),
// DataError -> 2 (data/schema), NumericError -> 3 (numeric failure).
struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

using Rng = std::mt19937_64;

// Bounded draw via the multiply-shift reduction. Avoids std distributions,
// whose output sequences are implementation-defined.
inline std::uint64_t bounded_draw(Rng& rng, std::uint64_t n) {
    const unsigned __int128 product = static_cast<unsigned __int128>(rng()) * n;
    return static_cast<std::uint64_t>(product >> 64);
}

// Uniform double in [0,1) with 53 bits.
inline double unit_draw(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Fisher-Yates shuffle driven by bounded_draw.
template <typename T>
void deterministic_shuffle(std::vector<T>& items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(bounded_draw(rng, i));
        std::swap(items[i - 1], items[j]);
    }
}

// Runs fn(begin, end) over contiguous chunks of [0, count). Chunk boundaries
// depend only on (count, threads), so any result written per index slot is
// identical for every thread count. Exceptions from workers are rethrown.
void parallel_chunks(std::size_t count, int threads,
                     const std::function<void(std::size_t, std::size_t)>& fn);

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

// Strict double parser; `what` names the value in error messages.
double parse_double(std::string_view text, std::string_view what);

// Strict integer parser for whole-token values.
long long parse_integer(std::string_view text, std::string_view what);

}  // namespace sfcrime
