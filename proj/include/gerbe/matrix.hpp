#pragma once

#include <cstddef>
#include <vector>

#include "gerbe/rational.hpp"

namespace gerbe {

/// Dense rowmajor matrix over an exact scalar type.
template <typename T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    T& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    std::vector<T> row(size_t r) const {
        return std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
    }
    std::vector<T> col(size_t c) const {
        std::vector<T> v(rows_);
        for (size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    void swap_rows(size_t a, size_t b) {
        if (a == b) return;
        for (size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }
    void swap_cols(size_t a, size_t b) {
        if (a == b) return;
        for (size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
    }
    /// row[dst] += k * row[src]
    void add_row(size_t dst, size_t src, const T& k) {
        for (size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
    }
    /// col[dst] += k * col[src]
    void add_col(size_t dst, size_t src, const T& k) {
        for (size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
    }
    void scale_row(size_t r, const T& k) {
        for (size_t c = 0; c < cols_; ++c) (*this)(r, c) *= k;
    }

    std::vector<T> apply(const std::vector<T>& x) const {
        std::vector<T> y(rows_);
        for (size_t r = 0; r < rows_; ++r) {
            T acc = 0;
            for (size_t c = 0; c < cols_; ++c)
                if ((*this)(r, c) != 0) acc += (*this)(r, c) * x[c];
            y[r] = acc;
        }
        return y;
    }

    Mat mul(const Mat& o) const {
        Mat out(rows_, o.cols_);
        for (size_t r = 0; r < rows_; ++r)
            for (size_t k = 0; k < cols_; ++k) {
                const T& v = (*this)(r, k);
                if (v == 0) continue;
                for (size_t c = 0; c < o.cols_; ++c)
                    if (o(k, c) != 0) out(r, c) += v * o(k, c);
            }
        return out;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != 0) return false;
        return true;
    }

private:
    size_t rows_, cols_;
    std::vector<T> data_;
};

using IntMatrix = Mat<Int>;
using RatMatrix = Mat<Rat>;

inline RatMatrix to_rational(const IntMatrix& a) {
    RatMatrix r(a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r(i, j) = Rat(a(i, j));
    return r;
}

}  // namespace gerbe
