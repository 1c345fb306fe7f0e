#pragma once

#include "grstrata/gaussian_rational.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace grstrata {

/// Dense row-major matrix over the Gaussian rationals.
///
/// Linear maps act on row vectors from the right: x -> x * M. A subspace is
/// the row span of its basis matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<GaussianRational> entries);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    /// Builds from nested integer rows; for tests and fixed constructions.
    static Matrix from_ints(const std::vector<std::vector<long>>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    GaussianRational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const GaussianRational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const GaussianRational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<GaussianRational> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    const std::vector<GaussianRational>& entries() const { return data_; }

    bool is_zero() const;

    Matrix transpose() const;
    Matrix conj_transpose() const;
    /// Rows [begin, end).
    Matrix row_block(std::size_t begin, std::size_t end) const;
    Matrix col_block(std::size_t begin, std::size_t end) const;
    Matrix select_rows(std::span<const std::size_t> indices) const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const GaussianRational& s, const Matrix& m);
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<GaussianRational> data_;
};

/// Stacks a on top of b; column counts must agree.
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix vstack(std::span<const Matrix> parts);

struct RrefResult {
    Matrix matrix;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Basis of the right null space {x : m * x^T = 0}, one vector per row.
Matrix kernel(const Matrix& m);

/// One exact solution x of a * x = b; throws Inconsistent otherwise.
Matrix solve(const Matrix& a, const Matrix& b);

/// Inverse of a square matrix; throws Inconsistent when singular.
Matrix inverse(const Matrix& a);

/// Largest max_abs() over all entries.
Rational max_abs_entry(const Matrix& m);

}  // namespace grstrata
