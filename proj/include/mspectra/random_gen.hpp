#pragma once

#include <cstdint>

#include "mspectra/multicomplex.hpp"

namespace mspectra {

/// SplitMix64. Hand-rolled so seeded runs are bit-identical across
/// platforms and standard library versions.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
    int range(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    bool chance(int num, int den) { return below(static_cast<std::uint64_t>(den)) < static_cast<std::uint64_t>(num); }
};

Scalar random_scalar(Rng& rng, const Field& f, bool allow_zero = true);
Matrix random_matrix(Rng& rng, const Field& f, std::size_t rows, std::size_t cols);
Matrix random_invertible(Rng& rng, const Field& f, std::size_t n);

/// Shift every bidegree; structure maps are untouched, validity is preserved.
Multicomplex translate(const Multicomplex& a, Bidegree by);

/// Random change of basis: an iso g: a -> a' where a' carries the conjugated
/// structure maps. Strict by construction.
Morphism random_conjugation(Rng& rng, McPtr a);

/// Random valid multicomplex: a direct sum of shifted elementary pieces
/// (points, single d_m arrows, small witness-cone windows) conjugated by a
/// random change of basis. Support stays inside the box; ranks stay small.
Multicomplex random_multicomplex(Rng& rng, int n, Field f, Box support_box, int max_rank = 3,
                                 int pieces = 3);

/// Random strict morphism with varied model-class behavior: mixtures of
/// isos, projections, inclusions, zero maps, witness-cone projections and
/// hom-space samples, composed with changes of basis.
Morphism random_strict_morphism(Rng& rng, int n, Field f, Box support_box);

/// Random composable pair (g, f) sharing the middle object.
std::pair<Morphism, Morphism> random_composable_pair(Rng& rng, int n, Field f, Box support_box);

}  // namespace mspectra
