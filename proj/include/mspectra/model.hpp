#pragma once

#include "mspectra/spectral.hpp"

namespace mspectra {

/// Where and why a page-level check failed. side is '1' ('E) or '2' (''E),
/// `at` is in original-plane labels on both sides.
struct Certificate {
    char side;
    int page;
    Bidegree at;
    std::string what;
};

struct VerdictPart {
    bool ok = true;
    std::vector<Certificate> certificates;
};

struct ClassVerdict {
    VerdictPart weak_equivalence;
    VerdictPart fibration;
};

/// Element of the generating families. J is 0 -> ZW_index(p,q); I is
/// iota_index: ZW_index(p,q) -> BW_index(p,q-1). side 2 means the involution
/// image of the side-1 map with these parameters.
struct GeneratingMap {
    enum class Kind { J, I };
    Kind kind;
    char side;  // '1' or '2'
    int index;
    Bidegree at;
    friend auto operator<=>(const GeneratingMap&, const GeneratingMap&) = default;
    std::string to_string() const;
};

/// I_{r,s}: side-1 maps of the r-family union side-2 maps of the s-family,
/// with parameters over the window.
std::vector<GeneratingMap> generating_cofibrations(int r, int s, const Box& window);
/// J_{r,s}: the generating trivial cofibrations.
std::vector<GeneratingMap> generating_trivial_cofibrations(int r, int s, const Box& window);

/// Per-morphism decision engine. Holds witness caches for source, target and
/// their involution images, so sweeping many page or lifting checks against
/// one morphism stays cheap.
class MorphismAnalyzer {
public:
    explicit MorphismAnalyzer(Morphism f);

    const Morphism& morphism() const { return f_; }
    SpectralContext& source_context(char side) { return side == '2' ? ca_inv_ : ca_; }
    SpectralContext& target_context(char side) { return side == '2' ? cb_inv_ : cb_; }

    /// Induced page-r matrix at an original-plane bidegree.
    Matrix induced(char side, int r, Bidegree at);

    /// E_{r,s} membership, decided as bidegreewise isomorphism on 'E_{r+1}
    /// and ''E_{s+1}. An optional region restricts which original-plane
    /// bidegrees are examined (used for window-materialized objects).
    VerdictPart weak_equivalence(int r, int s, std::optional<Box> region = std::nullopt);
    /// One-sided variant: quasi-isomorphism on the chosen side only.
    VerdictPart side_equivalence(char side, int r, std::optional<Box> region = std::nullopt);

    /// Fibration for (r,s): surjective on 'E_i (i<=r) and ''E_j (j<=s).
    VerdictPart fibration(int r, int s, std::optional<Box> region = std::nullopt);

    ClassVerdict classify(int r, int s, std::optional<Box> region = std::nullopt);

    bool has_rlp(const GeneratingMap& g);

    struct RlpSweep {
        bool ok = true;
        int checked = 0;
        std::optional<GeneratingMap> failed;
    };
    RlpSweep rlp_sweep(const std::vector<GeneratingMap>& maps);
    /// Windows chosen automatically from the supports of f and f^inv.
    RlpSweep rlp_against_generating_cofibrations(int r, int s);
    RlpSweep rlp_against_generating_trivial_cofibrations(int r, int s);

    struct Crosscheck {
        bool rlp_route;
        bool class_route;
        bool agree;
        RlpSweep sweep;
        ClassVerdict verdict;
    };
    /// RLP against I_{r,s}  <=>  fibration and weak equivalence.
    Crosscheck acyclic_fibration_crosscheck(int r, int s);
    /// RLP against J_{r,s}  <=>  fibration.
    Crosscheck fibration_crosscheck(int r, int s);

    /// Quantification window for the side as seen by the generating maps.
    Box rlp_window(char side, int max_index) const;

private:
    VerdictPart page_check(int first_max, int second_max, bool require_iso, int first_min,
                           int second_min, std::optional<Box> region);

    Morphism f_, f_inv_;
    SpectralContext ca_, cb_, ca_inv_, cb_inv_;
};

}  // namespace mspectra
