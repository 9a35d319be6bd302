#pragma once

#include <optional>
#include <vector>

#include "mspectra/matrix.hpp"

namespace mspectra {

/// Reduced row echelon form together with the pivot column of each nonzero row.
struct Echelon {
    Matrix mat;
    std::vector<std::size_t> pivots;
};

Echelon rref(Matrix m);
std::size_t rank(const Matrix& m);

/// A subspace of k^ambient stored by its canonical reduced-echelon basis
/// (rows). Equal subspaces have identical stored data.
class Subspace {
public:
    Subspace(Field f, std::size_t ambient) : ambient_(ambient), basis_(f, 0, ambient) {}

    /// Canonicalizes the span of the given row vectors.
    static Subspace span(Field f, std::size_t ambient, const std::vector<Vec>& vectors);
    static Subspace span_rows(const Matrix& rows);
    static Subspace full(Field f, std::size_t ambient);

    const Field& field() const { return basis_.field(); }
    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    std::optional<Vec> coords(const Vec& v) const;

    friend Subspace operator+(const Subspace& a, const Subspace& b);
    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    std::size_t ambient_;
    Matrix basis_;  // dim x ambient, reduced echelon, no zero rows
};

Subspace kernel(const Matrix& m);
Subspace image(const Matrix& m);  // column space
std::optional<Vec> solve(const Matrix& m, const Vec& b);
Matrix inverse(const Matrix& m);  // throws InputError if singular

/// A quotient cycles/boundaries with a tracked representative basis: the
/// representatives complete a basis of `boundaries` to one of `cycles`.
class QuotientPresentation {
public:
    QuotientPresentation(Subspace cycles, Subspace boundaries, Matrix representatives)
        : cycles_(std::move(cycles)), boundaries_(std::move(boundaries)), reps_(std::move(representatives)) {}

    const Subspace& cycles() const { return cycles_; }
    const Subspace& boundaries() const { return boundaries_; }
    const Matrix& representatives() const { return reps_; }
    std::size_t dim() const { return reps_.rows(); }
    std::size_t ambient_dim() const { return cycles_.ambient_dim(); }

    /// Coordinates of an ambient vector over the representatives, modulo
    /// boundaries. Empty if the vector is not a cycle.
    std::optional<Vec> coords(const Vec& v) const;

private:
    Subspace cycles_;
    Subspace boundaries_;
    Matrix reps_;
};

/// Requires boundaries ⊆ cycles; a violation throws InternalError since it
/// signals a bug upstream (e.g. in a witness-map formula).
QuotientPresentation quotient(const Subspace& cycles, const Subspace& boundaries);

}  // namespace mspectra
