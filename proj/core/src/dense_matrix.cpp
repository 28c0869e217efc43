#include "glpn/dense_matrix.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "glpn/errors.hpp"

namespace glpn {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("DenseMatrix: data length " + std::to_string(data_.size()) +
                             " does not match " + std::to_string(rows_) + "x" +
                             std::to_string(cols_));
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::diag(std::span<const double> entries) {
    DenseMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

DenseMatrix DenseMatrix::column(std::span<const double> entries) {
    DenseMatrix m(entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
    return m;
}

bool DenseMatrix::all_finite() const noexcept {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

void DenseMatrix::require_finite(const char* where) const {
    if (!all_finite()) {
        throw ContractError(std::string(where) + ": non-finite entry");
    }
}

}  // namespace glpn
