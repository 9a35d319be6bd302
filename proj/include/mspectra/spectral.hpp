#pragma once

#include <array>
#include <mutex>

#include "mspectra/multicomplex.hpp"

namespace mspectra {

/// Memoized witness-cycle / witness-boundary data for one multicomplex.
/// Computations at distinct keys are independent; the cache is the only
/// synchronization point.
class SpectralContext {
public:
    explicit SpectralContext(McPtr a);

    const Multicomplex& object() const { return *a_; }
    const McPtr& object_ptr() const { return a_; }

    /// Component ranks of the ambient of ZW_r at (p,q): A^{p-i,q-i} for
    /// i = 0..r-1 (a single component for r = 0, where ZW_0 = A^{p,q}).
    std::vector<int> zw_component_ranks(int r, Bidegree at) const;
    std::size_t zw_ambient_dim(int r, Bidegree at) const;

    /// The witness r-cycles as a subspace of the concatenated ambient.
    const Subspace& witness_cycles(int r, Bidegree at);

    /// Witness-boundary domain of w_r into ZW_r(p,q): the product
    /// ZW_{r-1}(p+r-1,q+r-2) x A^{p,q-1} x ZW_{r-1}(p-1,q-1) as a subspace
    /// of its concatenated ambient.
    struct BwDomain {
        Subspace space;
        std::array<std::size_t, 3> part_dims;     // ambient dims of the parts
        std::array<std::size_t, 3> part_offsets;  // offsets in the ambient
    };
    const BwDomain& bw_domain(int r, Bidegree at);

    /// Matrix of the witness map w_r from the BW ambient to the ZW ambient.
    const Matrix& w_matrix(int r, Bidegree at);

    /// Image of w_r restricted to the witness-boundary subspace.
    const Subspace& boundaries(int r, Bidegree at);

    /// Page presentation E_r = ZW_r / w_r(BW_r) at one bidegree.
    const QuotientPresentation& page(int r, Bidegree at);
    std::size_t page_dim(int r, Bidegree at) { return page(r, at).dim(); }

    std::optional<Box> support_hull() const { return a_->support_hull(); }

private:
    McPtr a_;
    std::mutex mu_;
    std::map<std::pair<int, Bidegree>, Subspace> zw_cache_;
    std::map<std::pair<int, Bidegree>, BwDomain> bw_cache_;
    std::map<std::pair<int, Bidegree>, Matrix> w_cache_;
    std::map<std::pair<int, Bidegree>, Subspace> bdry_cache_;
    std::map<std::pair<int, Bidegree>, QuotientPresentation> page_cache_;
};

/// Blockwise application of f to the ZW_r ambient at (p,q).
Matrix morphism_on_zw_ambient(const Morphism& f, int r, Bidegree at);
/// Blockwise application of f to the BW_r ambient at (p,q).
Matrix morphism_on_bw_ambient(const Morphism& f, int r, Bidegree at);

/// Matrix of the induced map on page r at (p,q), in the quotient
/// representative coordinates of source and target. Throws InternalError if
/// the map fails to descend (impossible for strict f on valid objects).
Matrix induced_page_matrix(SpectralContext& src, SpectralContext& dst, const Morphism& f, int r,
                           Bidegree at);

/// CLI-facing dimension table of one page over a region.
struct PageTable {
    char side;  // '1' or '2'
    int r;
    std::map<Bidegree, int> dims;  // nonzero entries only
};

/// side '2' is computed as the first page of the involution, re-indexed so
/// entries appear at the original-plane bidegrees.
PageTable page_table(McPtr a, char side, int r, std::optional<Box> region = std::nullopt);

/// Whether page r at (p,q) of a (possibly truncated) object is covered by
/// its window: all witness data lives within distance r+1.
bool page_region_safe(const Multicomplex& a, int r, Bidegree at);

/// Homology of (E_1, induced d_1), used only as a cross-check for page 2.
std::map<Bidegree, int> page_two_via_page_one(McPtr a);

/// Classical spectral sequence of the column-filtered total complex with
/// deg(x) = q - p and D|A^{p,q} = sum_i (-1)^{i deg} d_i, filtration
/// F_p = direct sum over p' <= p. Dimensions are reported at (p, q = n+p).
/// Throws InternalError if D^2 != 0 (a sign-convention bug, not bad input).
class ClassicalOracle {
public:
    explicit ClassicalOracle(McPtr a);
    std::map<Bidegree, int> page_dims(int r);

private:
    struct Layer {  // total degree n
        std::vector<Bidegree> components;  // sorted by p ascending
        std::vector<std::size_t> offsets;
        std::size_t dim = 0;
    };
    const Layer* layer(int n) const;
    std::size_t filtration_dim(const Layer& l, int p) const;
    Subspace z_space(int r, int p, int n);

    McPtr a_;
    std::map<int, Layer> layers_;
    std::map<int, Matrix> d_;  // D^n per total degree
    std::map<std::tuple<int, int, int>, Subspace> z_cache_;
};

}  // namespace mspectra
