#include "mspectra/linalg.hpp"

namespace mspectra {

Echelon rref(Matrix m) {
    const Field& f = m.field();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (!f.is_zero(m.at(i, c))) {
                sel = i;
                break;
            }
        }
        if (sel == rows) continue;
        if (sel != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        const Scalar piv_inv = f.inv(m.at(r, c));
        for (std::size_t j = c; j < cols; ++j) m.at(r, j) = f.mul(piv_inv, m.at(r, j));
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || f.is_zero(m.at(i, c))) continue;
            const Scalar factor = m.at(i, c);
            for (std::size_t j = c; j < cols; ++j)
                m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return Echelon{std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Subspace Subspace::span(Field f, std::size_t ambient, const std::vector<Vec>& vectors) {
    return span_rows(Matrix::from_rows(f, vectors, ambient));
}

Subspace Subspace::span_rows(const Matrix& rows) {
    Echelon e = rref(rows);
    Subspace s(rows.field(), rows.cols());
    Matrix basis(rows.field(), e.pivots.size(), rows.cols());
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
        for (std::size_t j = 0; j < rows.cols(); ++j) basis.at(i, j) = e.mat.at(i, j);
    s.basis_ = std::move(basis);
    return s;
}

Subspace Subspace::full(Field f, std::size_t ambient) {
    Subspace s(f, ambient);
    s.basis_ = Matrix::identity(f, ambient);
    return s;
}

bool Subspace::contains(const Vec& v) const { return coords(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw InternalError("subspace contains: ambient mismatch");
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

std::optional<Vec> Subspace::coords(const Vec& v) const {
    if (v.size() != ambient_) throw InternalError("subspace coords: size mismatch");
    const Field& f = field();
    // Reduce v against the echelon basis; membership iff remainder is zero.
    Vec rem = v;
    Vec c(dim(), f.zero());
    for (std::size_t i = 0; i < dim(); ++i) {
        // pivot column of row i = first nonzero entry
        std::size_t pc = 0;
        while (pc < ambient_ && f.is_zero(basis_.at(i, pc))) ++pc;
        if (pc == ambient_) throw InternalError("subspace basis has zero row");
        if (f.is_zero(rem[pc])) continue;
        c[i] = rem[pc];  // pivot entry is 1
        for (std::size_t j = pc; j < ambient_; ++j)
            rem[j] = f.sub(rem[j], f.mul(c[i], basis_.at(i, j)));
    }
    if (!is_zero_vec(f, rem)) return std::nullopt;
    return c;
}

Subspace operator+(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_) throw InternalError("subspace sum: ambient mismatch");
    Matrix stacked(a.field(), a.dim() + b.dim(), a.ambient_);
    stacked.set_block(0, 0, a.basis_);
    stacked.set_block(a.dim(), 0, b.basis_);
    return Subspace::span_rows(stacked);
}

Subspace kernel(const Matrix& m) {
    const Field& f = m.field();
    Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : e.pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        Vec v(m.cols(), f.zero());
        v[c] = f.one();
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            v[e.pivots[i]] = f.neg(e.mat.at(i, c));
        basis.push_back(std::move(v));
    }
    return Subspace::span(f, m.cols(), basis);
}

Subspace image(const Matrix& m) { return Subspace::span_rows(m.transpose()); }

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    if (b.size() != m.rows()) throw InputError("solve: right-hand side has wrong dimension");
    const Field& f = m.field();
    Matrix aug(f, m.rows(), m.cols() + 1);
    aug.set_block(0, 0, m);
    for (std::size_t i = 0; i < m.rows(); ++i) aug.at(i, m.cols()) = b[i];
    Echelon e = rref(std::move(aug));
    Vec x(m.cols(), f.zero());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == m.cols()) return std::nullopt;  // inconsistent row
        x[e.pivots[i]] = e.mat.at(i, m.cols());
    }
    return x;
}

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw InputError("inverse of a non-square matrix");
    const Field& f = m.field();
    const std::size_t n = m.rows();
    Matrix aug(f, n, 2 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, Matrix::identity(f, n));
    Echelon e = rref(std::move(aug));
    if (e.pivots.size() != n || (n > 0 && e.pivots.back() != n - 1))
        throw InputError("matrix is singular");
    Matrix inv(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = e.mat.at(i, n + j);
    return inv;
}

QuotientPresentation quotient(const Subspace& cycles, const Subspace& boundaries) {
    if (cycles.ambient_dim() != boundaries.ambient_dim())
        throw InternalError("quotient: ambient mismatch");
    if (!cycles.contains(boundaries))
        throw InternalError("quotient: boundaries not contained in cycles");
    const Field& f = cycles.field();
    // Complete the boundary basis to a basis of cycles, scanning the cycle
    // basis rows in canonical order so the result is input-order independent.
    Matrix work(f, boundaries.dim(), cycles.ambient_dim());
    work.set_block(0, 0, boundaries.basis());
    std::size_t current_rank = rank(work);
    if (current_rank != boundaries.dim()) throw InternalError("quotient: degenerate boundary basis");
    std::vector<Vec> reps;
    for (std::size_t i = 0; i < cycles.dim(); ++i) {
        Vec cand = cycles.basis().row(i);
        Matrix test(f, work.rows() + 1, cycles.ambient_dim());
        test.set_block(0, 0, work);
        test.set_row(work.rows(), cand);
        if (rank(test) > current_rank) {
            reps.push_back(cand);
            work = std::move(test);
            ++current_rank;
        }
    }
    return QuotientPresentation(cycles, boundaries,
                                Matrix::from_rows(f, reps, cycles.ambient_dim()));
}

std::optional<Vec> QuotientPresentation::coords(const Vec& v) const {
    const Field& f = cycles_.field();
    // Solve [reps^T | boundary^T] x = v and keep the representative part.
    const std::size_t n = ambient_dim();
    Matrix sys(f, n, reps_.rows() + boundaries_.dim());
    for (std::size_t j = 0; j < reps_.rows(); ++j)
        for (std::size_t i = 0; i < n; ++i) sys.at(i, j) = reps_.at(j, i);
    for (std::size_t j = 0; j < boundaries_.dim(); ++j)
        for (std::size_t i = 0; i < n; ++i) sys.at(i, reps_.rows() + j) = boundaries_.basis().at(j, i);
    auto x = solve(sys, v);
    if (!x) return std::nullopt;
    Vec c(x->begin(), x->begin() + static_cast<long>(reps_.rows()));
    return c;
}

}  // namespace mspectra
