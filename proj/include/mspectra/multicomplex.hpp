#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mspectra/an_algebra.hpp"
#include "mspectra/bidegree.hpp"
#include "mspectra/linalg.hpp"

namespace mspectra {

/// A failed instance of the defining relation sum_{i+j=l} (-1)^i d_i d_j = 0.
struct RelationViolation {
    int l;
    Bidegree at;
    Matrix residual;
};

/// Finite-support N-multicomplex: a bigraded module given by per-bidegree
/// ranks plus structure maps d_0..d_{N-1} as per-bidegree blocks. Absent
/// blocks are zero. Values are treated as immutable once built.
///
/// Sign convention: the relations are sum_{i+j=l} (-1)^i d_i d_j = 0 (so a
/// bicomplex has commuting differentials, d_0 d_1 = d_1 d_0).
class Multicomplex {
public:
    Multicomplex(int n, Field f) : n_(n), field_(f) { check_alphabet(n); }

    int n() const { return n_; }
    const Field& field() const { return field_; }

    void set_rank(Bidegree at, int rank);
    int rank_at(Bidegree at) const;
    const std::map<Bidegree, int>& support() const { return support_; }
    std::size_t total_dim() const;

    /// Block of d_i leaving `from`; zero-shaped when absent.
    Matrix diff(int i, Bidegree from) const;
    bool has_diff(int i, Bidegree from) const;
    void set_diff(int i, Bidegree from, const Matrix& block);
    const std::map<std::pair<int, Bidegree>, Matrix>& diff_blocks() const { return diffs_; }

    bool truncated() const { return truncated_; }
    const std::optional<Box>& window() const { return window_; }
    void set_truncated(bool truncated, std::optional<Box> window = std::nullopt) {
        truncated_ = truncated;
        window_ = window;
    }

    /// Checks every relation at every supported bidegree. For truncated
    /// objects the check at (l, p, q) is skipped unless every intermediate
    /// bidegree of the composites lies inside the declared window.
    std::vector<RelationViolation> validate() const;
    bool is_valid() const { return validate().empty(); }

    std::optional<Box> support_hull() const;

    friend bool operator==(const Multicomplex& a, const Multicomplex& b) {
        return a.n_ == b.n_ && a.field_ == b.field_ && a.support_ == b.support_ &&
               a.diffs_ == b.diffs_;
    }
    friend bool operator!=(const Multicomplex& a, const Multicomplex& b) { return !(a == b); }

private:
    int n_;
    Field field_;
    std::map<Bidegree, int> support_;
    std::map<std::pair<int, Bidegree>, Matrix> diffs_;
    bool truncated_ = false;
    std::optional<Box> window_;
};

using McPtr = std::shared_ptr<const Multicomplex>;

Multicomplex involve(const Multicomplex& a);
Multicomplex direct_sum(const Multicomplex& a, const Multicomplex& b);
Multicomplex zero_multicomplex(int n, Field f);
/// Rank-1 module at one bidegree, all structure maps zero.
Multicomplex point_module(int n, Field f, Bidegree at);

struct StrictnessViolation {
    int i;
    Bidegree at;
    Matrix residual;  // f d_i - d_i f
};

/// Bidegree-preserving map commuting with every d_i, stored blockwise.
class Morphism {
public:
    Morphism(McPtr source, McPtr target);

    const Multicomplex& source() const { return *source_; }
    const Multicomplex& target() const { return *target_; }
    const McPtr& source_ptr() const { return source_; }
    const McPtr& target_ptr() const { return target_; }

    Matrix block(Bidegree at) const;
    void set_block(Bidegree at, const Matrix& m);
    const std::map<Bidegree, Matrix>& blocks() const { return blocks_; }

    std::vector<StrictnessViolation> validate() const;
    bool is_strict() const { return validate().empty(); }

    bool is_surjective_at(Bidegree at) const;
    bool is_injective_at(Bidegree at) const;

private:
    McPtr source_, target_;
    std::map<Bidegree, Matrix> blocks_;
};

Morphism identity_morphism(McPtr a);
Morphism zero_morphism(McPtr source, McPtr target);
Morphism compose(const Morphism& g, const Morphism& f);  // g after f
Morphism involve(const Morphism& f);

/// Direct sum of two objects together with the four canonical strict maps.
struct DirectSum {
    McPtr sum;
    Morphism include_left, include_right, project_left, project_right;
};
DirectSum make_direct_sum(McPtr a, McPtr b);
Morphism direct_sum(const Morphism& f, const Morphism& g);

/// Basis of the space of strict morphisms a -> b (both finite support),
/// computed from the strictness linear system.
std::vector<Morphism> hom_space(McPtr a, McPtr b);

}  // namespace mspectra
