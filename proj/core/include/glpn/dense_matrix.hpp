#ifndef GLPN_DENSE_MATRIX_HPP
#define GLPN_DENSE_MATRIX_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace glpn {

/// Row-major dense matrix of doubles. The one numeric carrier used everywhere.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix diag(std::span<const double> entries);
    static DenseMatrix column(std::span<const double> entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }
    std::span<const double> values() const noexcept { return data_; }

    double* row_ptr(std::size_t i) noexcept { return data_.data() + i * cols_; }
    const double* row_ptr(std::size_t i) const noexcept { return data_.data() + i * cols_; }

    bool same_shape(const DenseMatrix& other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }
    bool all_finite() const noexcept;

    /// Throws ContractError if any entry is NaN or Inf.
    void require_finite(const char* where) const;

    bool operator==(const DenseMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace glpn

#endif  // GLPN_DENSE_MATRIX_HPP
