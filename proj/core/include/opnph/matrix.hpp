#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace opnph {

/// Dense row-major matrix of doubles. The graphs this library works with are
/// small (a few hundred to a couple thousand vertices), so there is no need
/// for BLAS or sparse storage.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    double operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    std::span<double> row(std::size_t i) {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }

    std::span<const double> data() const { return data_; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        assert(a.cols_ == b.rows_);
        Matrix c(a.rows_, b.cols_);
        // ikj order keeps the inner loop contiguous in both b and c.
        for (std::size_t i = 0; i < a.rows_; ++i) {
            const double* arow = a.data_.data() + i * a.cols_;
            double* crow = c.data_.data() + i * c.cols_;
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const double aik = arow[k];
                if (aik == 0.0) continue;
                const double* brow = b.data_.data() + k * b.cols_;
                for (std::size_t j = 0; j < b.cols_; ++j) crow[j] += aik * brow[j];
            }
        }
        return c;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// A^t by iterated multiplication, t >= 1.
inline Matrix matrix_power(const Matrix& a, int t) {
    assert(t >= 1);
    Matrix result = a;
    for (int i = 1; i < t; ++i) result = result * a;
    return result;
}

inline double max_entry(const Matrix& m) {
    double best = 0.0;
    bool first = true;
    for (double v : m.data()) {
        if (first || v > best) {
            best = v;
            first = false;
        }
    }
    return best;
}

} // namespace opnph
