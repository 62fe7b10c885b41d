#include <doctest.h>

#include <random>

#include "secat/errors.hpp"
#include "secat/linalg.hpp"

using namespace secat;

namespace {

RationalMatrix from_rows(int rows, int cols, const std::vector<std::vector<int>>& vals) {
    RationalMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (vals[static_cast<size_t>(r)][static_cast<size_t>(c)] != 0)
                m.set(r, c, Rat(vals[static_cast<size_t>(r)][static_cast<size_t>(c)]));
    return m;
}

RationalMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
    RationalMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            const int num = static_cast<int>(rng() % 7) - 3;
            const int den = 1 + static_cast<int>(rng() % 3);
            if (num != 0) m.set(r, c, frac(num, den));
        }
    return m;
}

} // namespace

TEST_CASE("rref on identity and zero") {
    const auto id = RationalMatrix::identity(3);
    const auto r = rref(id);
    CHECK(r.mat == id);
    CHECK(r.pivots == std::vector<int>{0, 1, 2});

    const RationalMatrix z(4, 2);
    const auto rz = rref(z);
    CHECK(rz.pivots.empty());
    for (const auto& row : rz.mat.row) CHECK(row.empty());
}

TEST_CASE("rref eliminates dependent rows") {
    const auto m = from_rows(2, 2, {{2, 4}, {1, 2}});
    const auto r = rref(m);
    CHECK(r.pivots == std::vector<int>{0});
    CHECK(r.mat.at(0, 0) == 1);
    CHECK(r.mat.at(0, 1) == 2);
    CHECK(r.mat.at(1, 0) == 0);
    CHECK(r.mat.at(1, 1) == 0);
}

TEST_CASE("kernel examples") {
    CHECK(kernel_basis(RationalMatrix::identity(3)).dim() == 0);
    const RationalMatrix z(3, 3);
    CHECK(kernel_basis(z).dim() == 3);

    const auto m = from_rows(1, 2, {{1, 1}});
    const auto k = kernel_basis(m);
    REQUIRE(k.dim() == 1);
    CHECK(k.vecs[0] == Vec{Rat(1), Rat(-1)});
}

TEST_CASE("image examples") {
    const auto full = image_basis(RationalMatrix::identity(2));
    CHECK(full.dim() == 2);
    CHECK(image_basis(RationalMatrix(3, 2)).dim() == 0);

    const auto col = image_basis(from_rows(2, 1, {{1}, {2}}));
    REQUIRE(col.dim() == 1);
    CHECK(col.vecs[0] == Vec{Rat(1), Rat(2)});
}

TEST_CASE("membership") {
    SubspaceBasis w(2);
    w.vecs.push_back(Vec{Rat(0), Rat(1)});
    CHECK(membership(Vec{Rat(0), Rat(0)}, w));
    CHECK(membership(Vec{Rat(0), Rat(5)}, w));
    CHECK_FALSE(membership(Vec{Rat(1), Rat(0)}, w));
    CHECK_THROWS_AS(membership(Vec{Rat(1)}, w), ValidationError);
}

TEST_CASE("quotient map examples") {
    SubspaceBasis v(2);
    v.vecs.push_back(Vec{Rat(1), Rat(0)});
    v.vecs.push_back(Vec{Rat(0), Rat(1)});

    SUBCASE("W = 0 gives the identity") {
        const auto q = quotient_map(v, SubspaceBasis(2));
        CHECK(q.dim() == 2);
        CHECK(q.coords(Vec{Rat(3), Rat(4)}) == Vec{Rat(3), Rat(4)});
    }
    SUBCASE("W = V gives the zero space") {
        const auto q = quotient_map(v, v);
        CHECK(q.dim() == 0);
    }
    SUBCASE("one-dimensional quotient with echelon representative") {
        SubspaceBasis w(2);
        w.vecs.push_back(Vec{Rat(1), Rat(-1)});
        const auto q = quotient_map(v, w);
        REQUIRE(q.dim() == 1);
        CHECK(q.reps.vecs[0] == Vec{Rat(1), Rat(0)});
        // (0,1) = (1,0) - (1,-1), so its class equals the representative's
        CHECK(q.coords(Vec{Rat(0), Rat(1)}) == Vec{Rat(1)});
        // composition with the inclusion of W is zero
        CHECK(vec_is_zero(q.coords(w.vecs[0])));
    }
    SUBCASE("W not contained in V is rejected") {
        SubspaceBasis small(2);
        small.vecs.push_back(Vec{Rat(1), Rat(0)});
        SubspaceBasis w(2);
        w.vecs.push_back(Vec{Rat(0), Rat(1)});
        CHECK_THROWS_AS(quotient_map(small, w), ValidationError);
    }
}

TEST_CASE("rank-nullity and idempotence on random matrices") {
    std::mt19937_64 rng(20240517);
    for (int trial = 0; trial < 60; ++trial) {
        const int rows = 1 + static_cast<int>(rng() % 6);
        const int cols = 1 + static_cast<int>(rng() % 6);
        const auto m = random_matrix(rng, rows, cols);
        const auto r = rref(m);
        const auto k = kernel_basis(m);
        CHECK(static_cast<int>(r.pivots.size()) + k.dim() == cols);
        // rref is idempotent
        const auto r2 = rref(r.mat);
        CHECK(r2.mat == r.mat);
        CHECK(r2.pivots == r.pivots);
        // every kernel vector maps to zero
        for (const Vec& v : k.vecs) CHECK(vec_is_zero(m.apply(v)));
        // image dimension equals the rank
        CHECK(image_basis(m).dim() == static_cast<int>(r.pivots.size()));
    }
}

TEST_CASE("quotient coords are a retraction with kernel W") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const int amb = 2 + static_cast<int>(rng() % 4);
        Echelon ve(amb);
        for (int i = 0; i < amb; ++i) {
            Vec v(static_cast<size_t>(amb));
            for (int c = 0; c < amb; ++c) v[static_cast<size_t>(c)] = Rat(static_cast<int>(rng() % 5) - 2);
            ve.insert(std::move(v));
        }
        const SubspaceBasis v = ve.basis();
        Echelon we(amb);
        for (int i = 0; i < 2 && i < v.dim(); ++i) we.insert(v.vecs[static_cast<size_t>(i)]);
        const SubspaceBasis w = we.basis();
        const auto q = quotient_map(v, w);
        CHECK(q.dim() == v.dim() - w.dim());
        for (const Vec& wv : w.vecs) CHECK(vec_is_zero(q.coords(wv)));
        for (const Vec& bv : v.vecs) {
            // lift(coords(v)) agrees with v modulo W
            const Vec lifted = q.lift(q.coords(bv));
            Vec diff(bv.size());
            for (size_t i = 0; i < bv.size(); ++i) diff[i] = bv[i] - lifted[i];
            CHECK(membership(diff, w));
        }
    }
}
