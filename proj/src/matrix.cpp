#include "mspectra/matrix.hpp"

namespace mspectra {

Matrix Matrix::identity(Field f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
}

Matrix Matrix::from_rows(Field f, const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw InternalError("from_rows: ragged row");
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Vec Matrix::row(std::size_t i) const {
    Vec v(a_.begin() + static_cast<long>(i * cols_), a_.begin() + static_cast<long>((i + 1) * cols_));
    return v;
}

Vec Matrix::col(std::size_t j) const {
    Vec v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
    return v;
}

void Matrix::set_row(std::size_t i, const Vec& v) {
    if (v.size() != cols_) throw InternalError("set_row: size mismatch");
    for (std::size_t j = 0; j < cols_; ++j) at(i, j) = v[j];
}

void Matrix::set_block(std::size_t i0, std::size_t j0, const Matrix& m) {
    if (i0 + m.rows() > rows_ || j0 + m.cols() > cols_) throw InternalError("set_block: out of range");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) at(i0 + i, j0 + j) = m.at(i, j);
}

void Matrix::add_block(std::size_t i0, std::size_t j0, const Matrix& m, const Scalar& scale) {
    if (i0 + m.rows() > rows_ || j0 + m.cols() > cols_) throw InternalError("add_block: out of range");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            at(i0 + i, j0 + j) = field_.add(at(i0 + i, j0 + j), field_.mul(scale, m.at(i, j)));
}

Matrix Matrix::transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

bool Matrix::is_zero() const {
    for (const Scalar& s : a_)
        if (!field_.is_zero(s)) return false;
    return true;
}

Vec Matrix::apply(const Vec& v) const {
    if (v.size() != cols_) throw InternalError("apply: size mismatch");
    Vec y(rows_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i) {
        Scalar acc = field_.zero();
        for (std::size_t j = 0; j < cols_; ++j) {
            if (field_.is_zero(at(i, j)) || field_.is_zero(v[j])) continue;
            acc = field_.add(acc, field_.mul(at(i, j), v[j]));
        }
        y[i] = acc;
    }
    return y;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.field_ != b.field_) throw InternalError("matrix product: field mismatch");
    if (a.cols_ != b.rows_) throw InternalError("matrix product: shape mismatch");
    const Field& f = a.field_;
    Matrix c(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& aik = a.at(i, k);
            if (f.is_zero(aik)) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                if (f.is_zero(b.at(k, j))) continue;
                c.at(i, j) = f.add(c.at(i, j), f.mul(aik, b.at(k, j)));
            }
        }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.field_ != b.field_ || a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw InternalError("matrix sum: shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.field_.add(a.a_[i], b.a_[i]);
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.field_ != b.field_ || a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw InternalError("matrix difference: shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.field_.sub(a.a_[i], b.a_[i]);
    return c;
}

Matrix Matrix::scaled(const Scalar& c) const {
    Matrix m = *this;
    for (Scalar& s : m.a_) s = field_.mul(c, s);
    return m;
}

Matrix Matrix::negated() const {
    Matrix m = *this;
    for (Scalar& s : m.a_) s = field_.neg(s);
    return m;
}

Vec zero_vec(const Field& f, std::size_t n) { return Vec(n, f.zero()); }

Vec add_vec(const Field& f, const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InternalError("add_vec: size mismatch");
    Vec c(a.size(), f.zero());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = f.add(a[i], b[i]);
    return c;
}

Vec scale_vec(const Field& f, const Scalar& c, const Vec& v) {
    Vec w(v.size(), f.zero());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = f.mul(c, v[i]);
    return w;
}

bool is_zero_vec(const Field& f, const Vec& v) {
    for (const Scalar& s : v)
        if (!f.is_zero(s)) return false;
    return true;
}

}  // namespace mspectra
