#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "mspectra/cone_module.hpp"
#include "mspectra/suite.hpp"

using namespace mspectra;
using namespace mspectra::testing;

namespace {
const Field Q = Field::rationals();
}

TEST_CASE("identities are weak equivalences and fibrations for every (r,s)") {
    Rng rng(1);
    for (int n : {2, 4}) {
        McPtr a = share(random_multicomplex(rng, n, Field::prime(5), Box{-1, 1, -1, 1}));
        MorphismAnalyzer an(identity_morphism(a));
        for (int r = 0; r <= 2; ++r)
            for (int s = 0; s <= 2; ++s) {
                CHECK(an.weak_equivalence(r, s).ok);
                CHECK(an.fibration(r, s).ok);
            }
    }
}

TEST_CASE("0 -> K passes the first side always, the second side only from s=3") {
    McPtr zero = share(zero_multicomplex(4, Q));
    McPtr k = share(interval(4, Q, 0, {0, 0}));
    MorphismAnalyzer an(zero_morphism(zero, k));
    for (int r = 0; r <= 3; ++r) CHECK(an.side_equivalence('1', r).ok);
    for (int s = 0; s <= 2; ++s) {
        const VerdictPart v = an.side_equivalence('2', s);
        CHECK(!v.ok);
        REQUIRE(!v.certificates.empty());
        CHECK(v.certificates.front().side == '2');
    }
    CHECK(an.side_equivalence('2', 3).ok);
    // membership: in E_{r,3} but not in E_{r,2}
    CHECK(an.weak_equivalence(0, 3).ok);
    CHECK(an.weak_equivalence(2, 3).ok);
    CHECK(!an.weak_equivalence(2, 2).ok);
    // 0 -> K is not a fibration at page 0 (K is not hit)
    CHECK(!an.fibration(0, 0).ok);
}

TEST_CASE("projections onto a summand are fibrations at every stage") {
    Rng rng(17);
    McPtr a = share(random_multicomplex(rng, 4, Field::prime(5), Box{-1, 1, -1, 1}));
    McPtr k = share(interval(4, Field::prime(5), 0, {0, 0}));
    const DirectSum ds = make_direct_sum(a, k);
    MorphismAnalyzer an(ds.project_left);
    for (int r = 0; r <= 2; ++r)
        for (int s = 0; s <= 3; ++s) CHECK(an.fibration(r, s).ok);
    // acyclic exactly when the contractible summand has died on both sides:
    // its second side survives through page 3
    CHECK(!an.weak_equivalence(2, 2).ok);
    CHECK(an.weak_equivalence(0, 3).ok);
}

TEST_CASE("q_r is a fibration at (r,0) and fails at (r+1,0) and (r,1)") {
    for (int n : {2, 4}) {
        for (int r = 1; r <= 2; ++r) {
            const Morphism q = q_projection_morphism(n, Q, r, -r - 4);
            MorphismAnalyzer an(q);
            CHECK(an.fibration(r, 0).ok);
            CHECK(!an.fibration(r + 1, 0).ok);
            CHECK(!an.fibration(r, 1).ok);
            CHECK(!an.weak_equivalence(r, 0).ok);
        }
    }
}

TEST_CASE("generating families have the stated shape") {
    const Box at{0, 0, 0, 0};
    const auto i00 = generating_cofibrations(0, 0, at);
    REQUIRE(i00.size() == 2);  // iota_1 on each side
    CHECK(i00[0].kind == GeneratingMap::Kind::I);
    CHECK(i00[0].index == 1);
    const auto j00 = generating_trivial_cofibrations(0, 0, at);
    REQUIRE(j00.size() == 2);  // 0 -> ZW_0 on each side
    CHECK(j00[0].kind == GeneratingMap::Kind::J);
    CHECK(j00[0].index == 0);
    const auto i21 = generating_cofibrations(2, 1, at);
    // side 1: J_1 and iota_3; side 2: iota_2
    REQUIRE(i21.size() == 3);
    const auto j21 = generating_trivial_cofibrations(2, 1, at);
    REQUIRE(j21.size() == 5);  // J_0,J_1,J_2 + J_0,J_1
}

TEST_CASE("isomorphisms lift against everything") {
    Rng rng(23);
    for (int n : {2, 4}) {
        McPtr a = share(random_multicomplex(rng, n, Field::prime(5), Box{-1, 1, -1, 1}));
        MorphismAnalyzer an(random_conjugation(rng, a));
        for (const GeneratingMap& g : generating_cofibrations(1, 1, Box{-2, 1, -2, 1}))
            CHECK(an.has_rlp(g));
        for (const GeneratingMap& g : generating_trivial_cofibrations(2, 2, Box{-2, 1, -2, 1}))
            CHECK(an.has_rlp(g));
    }
}

TEST_CASE("lifting against 0 -> ZW_0 is surjectivity at the bidegree") {
    Rng rng(29);
    McPtr a = share(random_multicomplex(rng, 2, Field::prime(5), Box{-1, 1, -1, 1}));
    McPtr b = share(random_multicomplex(rng, 2, Field::prime(5), Box{-1, 1, -1, 1}));
    for (const Morphism& h : hom_space(a, b)) {
        MorphismAnalyzer an(h);
        for (Bidegree x : Box{-1, 1, -1, 1}.points()) {
            const GeneratingMap g{GeneratingMap::Kind::J, '1', 0, x};
            CHECK(an.has_rlp(g) == h.is_surjective_at(x));
        }
    }
}

TEST_CASE("maps to the zero object are fibrations") {
    Rng rng(41);
    McPtr a = share(random_multicomplex(rng, 4, Field::prime(5), Box{-1, 1, -1, 1}));
    McPtr zero = share(zero_multicomplex(4, Field::prime(5)));
    MorphismAnalyzer an(zero_morphism(a, zero));
    for (int r = 0; r <= 2; ++r)
        for (int s = 0; s <= 2; ++s) CHECK(an.fibration(r, s).ok);
}

TEST_CASE("second-side generating maps read the object at the reflected bidegree") {
    // lifting a second-side stage-0 map at (p,q) asks for surjectivity of
    // the involution image there, i.e. of f itself at (-q,-p) when N = 2
    Rng rng(43);
    McPtr a = share(random_multicomplex(rng, 2, Field::prime(5), Box{-1, 1, -1, 1}));
    McPtr b = share(random_multicomplex(rng, 2, Field::prime(5), Box{-1, 1, -1, 1}));
    for (const Morphism& h : hom_space(a, b)) {
        MorphismAnalyzer an(h);
        for (Bidegree x : Box{-1, 1, -1, 1}.points()) {
            const GeneratingMap g{GeneratingMap::Kind::J, '2', 0, x};
            CHECK(an.has_rlp(g) == h.is_surjective_at({-x.q, -x.p}));
        }
    }
}

TEST_CASE("rlp crosschecks on structured and random morphisms") {
    Rng rng(31);
    for (int n : {2, 4}) {
        for (int trial = 0; trial < 8; ++trial) {
            const Morphism f = random_strict_morphism(rng, n, Field::prime(5), Box{-1, 1, -1, 1});
            const int r = rng.range(0, 2), s = rng.range(0, 2);
            const auto failure = check_rlp_instance(f, r, s);
            CHECK_MESSAGE(!failure.has_value(), failure.value_or(""));
        }
    }
    // the zero map 0 -> K is not a fibration, and both routes must agree
    McPtr zero = share(zero_multicomplex(4, Q));
    McPtr k = share(interval(4, Q, 0, {0, 0}));
    MorphismAnalyzer an(zero_morphism(zero, k));
    const auto cross = an.acyclic_fibration_crosscheck(0, 0);
    CHECK(cross.agree);
    CHECK(!cross.class_route);
}

TEST_CASE("class axioms on samples") {
    Rng rng(37);
    const Field f5 = Field::prime(5);
    for (int n : {2, 4}) {
        for (int trial = 0; trial < 6; ++trial) {
            const int r = rng.range(0, 2), s = rng.range(0, 2);
            auto [g, f] = random_composable_pair(rng, n, f5, Box{-1, 1, -1, 1});
            auto failure = check_two_of_three(g, f, r, s);
            CHECK_MESSAGE(!failure.has_value(), failure.value_or(""));
            Morphism m1 = random_strict_morphism(rng, n, f5, Box{-1, 1, -1, 1});
            Morphism m2 = random_strict_morphism(rng, n, f5, Box{-1, 1, -1, 1});
            failure = check_retract(rng, m1, m2, r, s);
            CHECK_MESSAGE(!failure.has_value(), failure.value_or(""));
            failure = check_monotone(m1, r, s);
            CHECK_MESSAGE(!failure.has_value(), failure.value_or(""));
            failure = check_involution_equivariance(m1, r, s);
            CHECK_MESSAGE(!failure.has_value(), failure.value_or(""));
        }
    }
}

TEST_CASE("the colimit projection is a one-sided equivalence but never two-sided") {
    for (int n : {2, 4}) {
        const Morphism pi = zw_infinity_projection(n, Q, {0, 0}, -10);
        CHECK(pi.validate().empty());
        MorphismAnalyzer an(pi);
        const Box region{-3, 0, -3, 0};
        for (int r = 0; r <= 2; ++r) CHECK(an.side_equivalence('1', r, region).ok);
        for (int s = 0; s <= 3; ++s) {
            const VerdictPart v = an.weak_equivalence(0, s, region);
            CHECK(!v.ok);
        }
    }
}

TEST_CASE("certificates locate the failure") {
    McPtr zero = share(zero_multicomplex(4, Q));
    McPtr k = share(interval(4, Q, 0, {0, 0}));
    MorphismAnalyzer an(zero_morphism(zero, k));
    const VerdictPart v = an.weak_equivalence(0, 0);
    REQUIRE(!v.ok);
    bool found = false;
    for (const Certificate& c : v.certificates)
        if (c.side == '2' && c.page == 1) found = true;
    CHECK(found);
}
