#include "grstrata/matrix.hpp"

#include "grstrata/error.hpp"

#include <utility>

namespace grstrata {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<GaussianRational> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) {
        throw Error(ErrorCode::DimensionMismatch, "entry count does not match rows*cols");
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_ints(const std::vector<std::vector<long>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged integer rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_) {
        if (!x.is_zero()) return false;
    }
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::conj_transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c).conj();
    return t;
}

Matrix Matrix::row_block(std::size_t begin, std::size_t end) const {
    Matrix b(end - begin, cols_);
    for (std::size_t r = begin; r < end; ++r)
        for (std::size_t c = 0; c < cols_; ++c) b(r - begin, c) = (*this)(r, c);
    return b;
}

Matrix Matrix::col_block(std::size_t begin, std::size_t end) const {
    Matrix b(rows_, end - begin);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = begin; c < end; ++c) b(r, c - begin) = (*this)(r, c);
    return b;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
    Matrix b(indices.size(), cols_);
    for (std::size_t r = 0; r < indices.size(); ++r)
        for (std::size_t c = 0; c < cols_; ++c) b(r, c) = (*this)(indices[r], c);
    return b;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "product shape mismatch");
    Matrix p(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        for (std::size_t m = 0; m < a.cols_; ++m) {
            const auto& x = a(r, m);
            if (x.is_zero()) continue;
            for (std::size_t c = 0; c < b.cols_; ++c) {
                const auto& y = b(m, c);
                if (!y.is_zero()) p(r, c) += x * y;
            }
        }
    }
    return p;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "sum shape mismatch");
    Matrix s = a;
    for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] += b.data_[i];
    return s;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "difference shape mismatch");
    Matrix s = a;
    for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] -= b.data_[i];
    return s;
}

Matrix operator*(const GaussianRational& s, const Matrix& m) {
    Matrix p = m;
    for (auto& x : p.data_) x *= s;
    return p;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    const Matrix parts[] = {a, b};
    return vstack(parts);
}

Matrix vstack(std::span<const Matrix> parts) {
    if (parts.empty()) return {};
    const std::size_t cols = parts.front().cols();
    std::size_t rows = 0;
    for (const auto& p : parts) {
        if (p.cols() != cols) throw Error(ErrorCode::DimensionMismatch, "vstack column mismatch");
        rows += p.rows();
    }
    std::vector<GaussianRational> data;
    data.reserve(rows * cols);
    for (const auto& p : parts) data.insert(data.end(), p.entries().begin(), p.entries().end());
    return {rows, cols, std::move(data)};
}

RrefResult rref(const Matrix& m) {
    RrefResult out{m, 0, {}};
    Matrix& a = out.matrix;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
        std::size_t r = pivot_row;
        while (r < rows && a(r, c).is_zero()) ++r;
        if (r == rows) continue;
        if (r != pivot_row) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(pivot_row, j));
        }
        const GaussianRational inv = a(pivot_row, c).inverse();
        for (std::size_t j = c; j < cols; ++j) {
            if (!a(pivot_row, j).is_zero()) a(pivot_row, j) *= inv;
        }
        for (std::size_t rr = 0; rr < rows; ++rr) {
            if (rr == pivot_row || a(rr, c).is_zero()) continue;
            const GaussianRational f = a(rr, c);
            for (std::size_t j = c; j < cols; ++j) {
                if (!a(pivot_row, j).is_zero()) a(rr, j) -= f * a(pivot_row, j);
            }
        }
        out.pivots.push_back(c);
        ++pivot_row;
    }
    out.rank = pivot_row;
    return out;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix kernel(const Matrix& m) {
    const auto red = rref(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto p : red.pivots) is_pivot[p] = true;

    Matrix basis(cols - red.rank, cols);
    std::size_t out = 0;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        basis(out, f) = 1;
        for (std::size_t r = 0; r < red.rank; ++r) basis(out, red.pivots[r]) = -red.matrix(r, f);
        ++out;
    }
    return basis;
}

Matrix solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "solve: row count mismatch");
    const std::size_t n = a.cols();
    Matrix aug(a.rows(), n + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
        for (std::size_t c = 0; c < b.cols(); ++c) aug(r, n + c) = b(r, c);
    }
    const auto red = rref(aug);
    if (!red.pivots.empty() && red.pivots.back() >= n) {
        throw Error(ErrorCode::Inconsistent, "right-hand side not in the column space");
    }
    Matrix x(n, b.cols());
    for (std::size_t r = 0; r < red.rank; ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) x(red.pivots[r], c) = red.matrix(r, n + c);
    return x;
}

Matrix inverse(const Matrix& a) {
    if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
    // a * x = I is inconsistent exactly when a is singular.
    return solve(a, Matrix::identity(a.rows()));
}

Rational max_abs_entry(const Matrix& m) {
    Rational best = 0;
    for (const auto& x : m.entries()) {
        Rational v = x.max_abs();
        if (v > best) best = v;
    }
    return best;
}

}  // namespace grstrata
