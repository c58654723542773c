#pragma once

#include <string>
#include <vector>

#include "sfcrime/common.hpp"

namespace sfcrime {

// Principal axes of standardized (centered, unit-variance) columns.
// components holds k rows of length d, orthonormal, ordered by descending
// explained variance. Columns that were constant at fit time keep scale 1
// and are listed in constant_columns.
struct PcaModel {
    std::vector<double> mean;
    std::vector<double> scale;
    Matrix components;  // k x d
    std::vector<double> explained_variance;
    std::vector<std::size_t> constant_columns;

    std::size_t dim() const { return mean.size(); }
    std::size_t component_count() const { return components.rows(); }
};

// Fits the top-k principal axes of the covariance of standardized columns
// via cyclic Jacobi rotations. Sign convention: each axis is flipped so its
// largest-magnitude entry is positive (ties broken by lowest index).
PcaModel pca_fit(const Matrix& data, std::size_t k);

// Row-wise scores: ((x - mean) / scale) . components^T.
Matrix pca_transform(const PcaModel& model, const Matrix& data);

// Reconstruction from scores: mean + scale * (scores . components).
Matrix pca_inverse_transform(const PcaModel& model, const Matrix& scores);

// Plain-text key-value round-trip (exact: doubles are written in
// shortest-round-trip form).
std::string pca_serialize(const PcaModel& model);
PcaModel pca_deserialize_lines(const std::vector<std::string>& lines, std::size_t& pos);
PcaModel pca_deserialize(const std::string& text);

}  // namespace sfcrime
