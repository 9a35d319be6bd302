#pragma once

#include <cstddef>
#include <vector>

#include "mspectra/field.hpp"

namespace mspectra {

using Vec = std::vector<Scalar>;

/// Dense matrix over a fixed field. Zero-dimensional shapes are legal and
/// behave as the corresponding zero maps.
class Matrix {
public:
    Matrix(Field f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), a_(rows * cols, f.zero()) {}

    static Matrix zero(Field f, std::size_t rows, std::size_t cols) { return Matrix(f, rows, cols); }
    static Matrix identity(Field f, std::size_t n);
    static Matrix from_rows(Field f, const std::vector<Vec>& rows, std::size_t cols);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;
    void set_row(std::size_t i, const Vec& v);

    /// Copies `m` into this matrix with top-left corner at (i0, j0).
    void set_block(std::size_t i0, std::size_t j0, const Matrix& m);
    void add_block(std::size_t i0, std::size_t j0, const Matrix& m, const Scalar& scale);

    Matrix transpose() const;
    bool is_zero() const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Vec apply(const Vec& v) const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    Matrix scaled(const Scalar& c) const;
    Matrix negated() const;

private:
    Field field_;
    std::size_t rows_, cols_;
    std::vector<Scalar> a_;
};

Vec zero_vec(const Field& f, std::size_t n);
Vec add_vec(const Field& f, const Vec& a, const Vec& b);
Vec scale_vec(const Field& f, const Scalar& c, const Vec& v);
bool is_zero_vec(const Field& f, const Vec& v);

}  // namespace mspectra
