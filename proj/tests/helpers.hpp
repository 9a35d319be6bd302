#pragma once

#include "mspectra/multicomplex.hpp"

namespace mspectra::testing {

inline Matrix mat(const Field& f, std::size_t rows, std::size_t cols,
                  std::initializer_list<long long> entries) {
    Matrix m(f, rows, cols);
    auto it = entries.begin();
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = f.from_int(*it++);
    return m;
}

inline Vec vec(const Field& f, std::initializer_list<long long> entries) {
    Vec v;
    for (long long e : entries) v.push_back(f.from_int(e));
    return v;
}

/// x in bidegree `at`, with d_m x spanning the target: the contractible
/// two-term piece (the K of the comparison section when m = 0, at = (0,0)).
inline Multicomplex interval(int n, const Field& f, int m, Bidegree at) {
    Multicomplex a(n, f);
    a.set_rank(at, 1);
    a.set_rank(at + diff_degree(m), 1);
    Matrix d(f, 1, 1);
    d.at(0, 0) = f.one();
    a.set_diff(m, at, d);
    return a;
}

inline McPtr share(Multicomplex m) { return std::make_shared<const Multicomplex>(std::move(m)); }

}  // namespace mspectra::testing
