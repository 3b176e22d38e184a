#include "doctest.h"
#include "prclab/gf.hpp"
#include "prclab/prng.hpp"

using namespace prclab;

namespace {

// Independent elimination order for the rank cross-check: eliminate by
// scanning rows for pivots column-major transposed.
size_t rank_transposed(const FqMatrix& m) {
    FqMatrix t(m.ctx, m.cols, m.rows);
    for (size_t r = 0; r < m.rows; ++r)
        for (size_t c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);
    return matrix_rank(t);
}

}  // namespace

TEST_CASE("field construction verifies primality and generator order") {
    FieldCtx f5(5);
    CHECK(f5.gamma() == 2);  // 2 has order 4 mod 5
    FieldCtx f2(2);
    CHECK(f2.gamma() == 1);
    CHECK_THROWS_WITH_AS(FieldCtx(6), doctest::Contains("NotPrime"), Error);
    CHECK_THROWS_WITH_AS(FieldCtx(5, 4), doctest::Contains("NotGenerator"), Error);
    // hint accepted when valid
    FieldCtx f7(7, 3);
    CHECK(f7.gamma() == 3);
}

TEST_CASE("inverses") {
    FieldCtx f5(5);
    CHECK(f5.inv(1) == 1);
    CHECK(f5.inv(2) == 3);  // 2*3 = 6 = 1 mod 5
    CHECK_THROWS_WITH_AS(f5.inv(0), doctest::Contains("ZeroInverse"), Error);
}

TEST_CASE("inverse is an antihomomorphism and negation cancels") {
    FieldCtx f(101);
    Prng rng(11);
    for (int t = 0; t < 200; ++t) {
        uint64_t a = 1 + rng.uniform_below(100);
        uint64_t b = 1 + rng.uniform_below(100);
        CHECK(f.inv(f.mul(a, b)) == f.mul(f.inv(b), f.inv(a)));
        uint64_t c = rng.uniform_below(101);
        CHECK(f.add(c, f.neg(c)) == 0);
    }
}

TEST_CASE("matrix rank basics") {
    FieldCtx f5(5);
    FqMatrix id(f5, 3, 3);
    for (int i = 0; i < 3; ++i) id.at(i, i) = 1;
    CHECK(matrix_rank(id) == 3);

    FqMatrix z(f5, 2, 4);
    CHECK(matrix_rank(z) == 0);

    FqMatrix dep(f5, 2, 2);
    dep.at(0, 0) = 1;
    dep.at(0, 1) = 2;
    dep.at(1, 0) = 2;
    dep.at(1, 1) = 4;  // row2 = 2*row1
    CHECK(matrix_rank(dep) == 1);
}

TEST_CASE("rank agrees with transposed elimination on random matrices") {
    FieldCtx f7(7);
    Prng rng(42);
    for (int t = 0; t < 100; ++t) {
        FqMatrix m(f7, 8, 8);
        for (auto& v : m.data) v = rng.uniform_below(7);
        CHECK(matrix_rank(m) == rank_transposed(m));
    }
}

TEST_CASE("rank does not mutate its input") {
    FieldCtx f7(7);
    Prng rng(1);
    FqMatrix m(f7, 4, 4);
    for (auto& v : m.data) v = rng.uniform_below(7);
    auto copy = m.data;
    matrix_rank(m);
    CHECK(m.data == copy);
}
