#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "mspectra/cone_module.hpp"
#include "mspectra/random_gen.hpp"
#include "mspectra/spectral.hpp"
#include "mspectra/suite.hpp"

using namespace mspectra;
using namespace mspectra::testing;

namespace {
const Field Q = Field::rationals();
}

TEST_CASE("witness cycles of the contractible piece") {
    McPtr k = share(interval(4, Q, 0, {0, 0}));
    SpectralContext ctx(k);
    CHECK(ctx.witness_cycles(1, {0, 0}).dim() == 0);            // d_0 x != 0
    CHECK(ctx.witness_cycles(1, {0, 1}).dim() == 1);            // span d_0 x
    CHECK(ctx.witness_cycles(3, {5, 5}).dim() == 0);            // empty ambient
    McPtr zero = share(zero_multicomplex(4, Q));
    SpectralContext zctx(zero);
    for (int r = 0; r <= 3; ++r) CHECK(zctx.witness_cycles(r, {0, 0}).dim() == 0);
}

TEST_CASE("witness map edge stages") {
    McPtr k = share(interval(2, Q, 0, {0, 0}));
    SpectralContext ctx(k);
    // w_0 = 0: no boundaries on page 0
    CHECK(ctx.boundaries(0, {0, 0}).dim() == 0);
    // w_1 = d_0: the matrix at (0,1) is the d_0 block from (0,0)
    CHECK(ctx.w_matrix(1, {0, 1}) == k->diff(0, {0, 0}));
    CHECK(ctx.boundaries(1, {0, 1}).dim() == 1);
}

TEST_CASE("page 0 is the object itself") {
    Rng rng(404);
    for (int n : {2, 3, 4}) {
        McPtr a = share(random_multicomplex(rng, n, Field::prime(5), Box{-2, 2, -2, 2}));
        SpectralContext ctx(a);
        for (auto& [at, rk] : a->support())
            CHECK(ctx.page_dim(0, at) == static_cast<std::size_t>(rk));
    }
}

TEST_CASE("first page of the contractible piece vanishes") {
    McPtr k = share(interval(4, Q, 0, {0, 0}));
    const PageTable t = page_table(k, '1', 1);
    CHECK(t.dims.empty());
    const PageTable t2 = page_table(k, '1', 2);
    CHECK(t2.dims.empty());
}

TEST_CASE("second side is the first side of the involution, re-indexed") {
    Rng rng(8);
    for (int n : {2, 4}) {
        McPtr a = share(random_multicomplex(rng, n, Field::prime(5), Box{-2, 2, -2, 2}));
        auto ainv = share(involve(*a));
        SpectralContext inv_ctx(ainv);
        for (int r = 0; r <= 2; ++r) {
            const PageTable second = page_table(a, '2', r);
            for (auto& [at, dim] : second.dims)
                CHECK(inv_ctx.page_dim(r, involution_bidegree(n, at)) ==
                      static_cast<std::size_t>(dim));
            // and nothing outside the reported support
            const auto hull = ainv->support_hull();
            REQUIRE(hull.has_value());
            for (Bidegree x : hull->inflated(r + 1).points()) {
                const std::size_t d = inv_ctx.zw_ambient_dim(r, x) == 0
                                          ? 0
                                          : inv_ctx.page_dim(r, x);
                const Bidegree label = involution_bidegree(n, x);
                const auto it = second.dims.find(label);
                CHECK((it == second.dims.end() ? 0u : static_cast<std::size_t>(it->second)) == d);
            }
        }
    }
}

TEST_CASE("interval pieces survive to page m and die at m+1") {
    for (int n : {2, 3, 4}) {
        for (int m = 0; m < n; ++m) {
            McPtr a = share(interval(n, Q, m, {0, 0}));
            SpectralContext ctx(a);
            for (int r = 0; r <= m; ++r) {
                CHECK(ctx.page_dim(r, {0, 0}) == 1);
                CHECK(ctx.page_dim(r, diff_degree(m)) == 1);
            }
            CHECK(ctx.page_dim(m + 1, {0, 0}) == 0);
            CHECK(ctx.page_dim(m + 1, diff_degree(m)) == 0);
        }
    }
}

TEST_CASE("boundary image is contained in the witness cycles") {
    Rng rng(606);
    for (int n : {2, 3, 4}) {
        McPtr a = share(random_multicomplex(rng, n, Field::prime(5), Box{-2, 2, -2, 2}));
        SpectralContext ctx(a);
        const auto hull = a->support_hull();
        if (!hull) continue;
        for (int r = 0; r <= 3; ++r)
            for (Bidegree x : hull->inflated(2).points()) {
                if (ctx.zw_ambient_dim(r, x) == 0) continue;
                CHECK(ctx.witness_cycles(r, x).contains(ctx.boundaries(r, x)));
            }
    }
}

TEST_CASE("induced maps: identity and zero") {
    Rng rng(909);
    McPtr a = share(random_multicomplex(rng, 3, Field::prime(5), Box{-1, 1, -1, 1}));
    SpectralContext ctx(a);
    const Morphism id = identity_morphism(a);
    const auto hull = a->support_hull();
    REQUIRE(hull.has_value());
    SpectralContext ctx2(a);
    for (int r = 0; r <= 2; ++r)
        for (Bidegree x : hull->inflated(1).points()) {
            if (ctx.zw_ambient_dim(r, x) == 0) continue;
            const Matrix m = induced_page_matrix(ctx, ctx2, id, r, x);
            CHECK(m == Matrix::identity(a->field(), ctx.page_dim(r, x)));
        }
    McPtr zero = share(zero_multicomplex(3, Field::prime(5)));
    SpectralContext zctx(zero);
    const Morphism from_zero = zero_morphism(zero, a);
    for (Bidegree x : hull->points()) {
        if (ctx.zw_ambient_dim(1, x) == 0) continue;
        const Matrix m = induced_page_matrix(zctx, ctx, from_zero, 1, x);
        CHECK(m.cols() == 0);
        CHECK(m.rows() == ctx.page_dim(1, x));
    }
}

TEST_CASE("classical oracle signs square to zero") {
    Rng rng(21);
    for (int n : {2, 3, 4}) {
        for (int trial = 0; trial < 10; ++trial) {
            McPtr a = share(random_multicomplex(rng, n, Field::prime(5), Box{-2, 2, -2, 2}));
            CHECK_NOTHROW(ClassicalOracle{a});
        }
    }
    McPtr zero = share(zero_multicomplex(2, Q));
    ClassicalOracle oracle(zero);
    for (int r = 0; r <= 3; ++r) CHECK(oracle.page_dims(r).empty());
}

TEST_CASE("witness pages agree with the classical oracle") {
    Rng rng(31337);
    for (int n : {2, 3, 4}) {
        for (const Field& f : {Field::rationals(), Field::prime(5)}) {
            for (int trial = 0; trial < 6; ++trial) {
                McPtr a = share(random_multicomplex(rng, n, f, Box{-2, 2, -2, 2}));
                const auto failure = check_oracle_instance(a, 4);
                CHECK_MESSAGE(!failure.has_value(), failure.value_or(""));
            }
        }
    }
}

TEST_CASE("page two via page one") {
    // bicomplex with d_1 = 0 everywhere: page 2 equals page 1
    Rng rng(55);
    Multicomplex a(2, Q);
    a.set_rank({0, 0}, 2);
    a.set_rank({0, 1}, 1);
    a.set_diff(0, {0, 0}, mat(Q, 1, 2, {1, 0}));
    McPtr ap = share(std::move(a));
    SpectralContext ctx(ap);
    const auto via = page_two_via_page_one(ap);
    for (auto& [at, dim] : via) CHECK(ctx.page_dim(1, at) == static_cast<std::size_t>(dim));
    // contractible piece: page two vanishes
    CHECK(page_two_via_page_one(share(interval(4, Q, 0, {0, 0}))).empty());
}

TEST_CASE("pages stabilize to the classical infinity page") {
    Rng rng(747);
    for (int n : {2, 3}) {
        McPtr a = share(random_multicomplex(rng, n, Field::prime(5), Box{-2, 2, -2, 2}));
        const auto hull = a->support_hull();
        if (!hull) continue;
        const int width = hull->pmax - hull->pmin + 2;
        SpectralContext ctx(a);
        ClassicalOracle oracle(a);
        // dims at width+1 equal dims at width+3 (both witness and classical)
        auto dims_at = [&](int r) {
            std::map<Bidegree, int> dims;
            for (Bidegree x : hull->inflated(r + 1).points()) {
                if (ctx.zw_ambient_dim(r, x) == 0) continue;
                const std::size_t d = ctx.page_dim(r, x);
                if (d > 0) dims[x] = static_cast<int>(d);
            }
            return dims;
        };
        CHECK(dims_at(width + 1) == dims_at(width + 3));
        CHECK(dims_at(width + 1) == oracle.page_dims(width + 1));
    }
}

TEST_CASE("truncated windows report pages only where covered") {
    const MaterializedCone mat =
        ConeModule::zw(2, Q, 1, {0, 0}).materialize_box(Box{-4, 0, -4, 1});
    CHECK(page_region_safe(*mat.object, 1, {-1, 0}));
    CHECK(!page_region_safe(*mat.object, 1, {0, 1}));  // too close to the edge
    const PageTable t = page_table(mat.object, '1', 1);
    CHECK(t.dims.count({-1, 0}) == 1);
}
