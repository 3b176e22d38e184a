#include <map>

#include "doctest.h"
#include "prclab/codes.hpp"

using namespace prclab;

namespace {

// Lagrange interpolation oracle: degree of the unique polynomial through
// all n points of a codeword.
bool reinterpolates_below(const CodeSpec& spec, const RSCodeword& cw, uint32_t k) {
    const FieldCtx& f = spec.ctx;
    // Newton's divided differences over F_q.
    std::vector<uint64_t> xs(spec.n), ys(cw.symbols.elems);
    for (uint32_t i = 0; i < spec.n; ++i) xs[i] = spec.point(i);
    std::vector<uint64_t> dd(ys);
    std::vector<uint64_t> newton;
    for (uint32_t lvl = 0; lvl < spec.n; ++lvl) {
        newton.push_back(dd[0]);
        for (uint32_t i = 0; i + lvl + 1 < spec.n; ++i)
            dd[i] = f.mul(f.sub(dd[i + 1], dd[i]), f.inv(f.sub(xs[i + lvl + 1], xs[i])));
        dd.pop_back();
    }
    // Degree < k iff all Newton coefficients from k upward vanish.
    for (uint32_t i = k; i < newton.size(); ++i)
        if (newton[i] != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("rs_encode hand example over F_5") {
    FieldCtx f5(5);
    CodeSpec spec(f5, 2);
    CHECK(spec.n == 4);
    Message m{FqVec(f5, {1, 2})};  // p = 1 + 2X
    RSCodeword cw = rs_encode(spec, m);
    // evaluation points gamma^j = 1, 2, 4, 3
    CHECK(cw.symbols.elems == std::vector<uint64_t>{3, 0, 4, 2});
}

TEST_CASE("rs_encode zero and constant messages") {
    FieldCtx f5(5);
    CodeSpec spec2(f5, 2);
    RSCodeword z = rs_encode(spec2, Message{FqVec(f5, {0, 0})});
    CHECK(z.symbols.elems == std::vector<uint64_t>{0, 0, 0, 0});

    CodeSpec spec1(f5, 1);
    RSCodeword c = rs_encode(spec1, Message{FqVec(f5, std::vector<uint64_t>{3})});
    CHECK(c.symbols.elems == std::vector<uint64_t>{3, 3, 3, 3});

    CHECK_THROWS_WITH_AS(rs_encode(spec2, Message{FqVec(f5, {1})}),
                         doctest::Contains("LengthMismatch"), Error);
}

TEST_CASE("frs_fold groups consecutive symbols") {
    FieldCtx f5(5);
    CodeSpec s1(f5, 2, 1);
    RSCodeword cw{FqVec(f5, {3, 0, 4, 2})};
    FRSCodeword f1 = frs_fold(s1, cw);
    REQUIRE(f1.symbols.size() == 4);
    CHECK(f1.symbols[0] == std::vector<uint64_t>{3});

    CodeSpec s2(f5, 2, 2);
    FRSCodeword f2 = frs_fold(s2, cw);
    REQUIRE(f2.symbols.size() == 2);
    CHECK(f2.symbols[0] == std::vector<uint64_t>{3, 0});
    CHECK(f2.symbols[1] == std::vector<uint64_t>{4, 2});

    CodeSpec s4(f5, 2, 4);
    FRSCodeword f4 = frs_fold(s4, cw);
    REQUIRE(f4.symbols.size() == 1);
    CHECK(f4.symbols[0] == std::vector<uint64_t>{3, 0, 4, 2});

    CHECK_THROWS_WITH_AS(CodeSpec(f5, 2, 3), doctest::Contains("FoldMismatch"), Error);
}

TEST_CASE("fold then flatten is the identity") {
    FieldCtx f13(13);
    CodeSpec spec(f13, 3, 4);
    Prng rng(5);
    RSCodeword cw = sample_codeword(spec, rng);
    FRSCodeword folded = frs_fold(spec, cw);
    std::vector<uint64_t> flat;
    for (const auto& t : folded.symbols) flat.insert(flat.end(), t.begin(), t.end());
    CHECK(flat == cw.symbols.elems);
}

TEST_CASE("encoding is linear") {
    FieldCtx f13(13);
    CodeSpec spec(f13, 4);
    Prng rng(7);
    for (int t = 0; t < 50; ++t) {
        Message m1 = sample_message(spec, rng);
        Message m2 = sample_message(spec, rng);
        uint64_t a = rng.uniform_below(13);
        Message combo{FqVec(f13, spec.k)};
        for (uint32_t i = 0; i < spec.k; ++i)
            combo.coeffs[i] = f13.add(f13.mul(a, m1.coeffs[i]), m2.coeffs[i]);
        RSCodeword c1 = rs_encode(spec, m1), c2 = rs_encode(spec, m2);
        RSCodeword cc = rs_encode(spec, combo);
        for (uint32_t j = 0; j < spec.n; ++j)
            CHECK(cc.symbols[j] == f13.add(f13.mul(a, c1.symbols[j]), c2.symbols[j]));
    }
}

TEST_CASE("sampling is deterministic under a fixed seed and re-interpolates") {
    FieldCtx f13(13);
    CodeSpec spec(f13, 3);
    Prng a(99), b(99);
    RSCodeword ca = sample_codeword(spec, a), cb = sample_codeword(spec, b);
    CHECK(ca.symbols.elems == cb.symbols.elems);
    Prng c(100);
    for (int t = 0; t < 20; ++t)
        CHECK(reinterpolates_below(spec, sample_codeword(spec, c), spec.k));
}

TEST_CASE("any k coordinates of a uniform codeword are exactly uniform (q=5, k=2)") {
    FieldCtx f5(5);
    CodeSpec spec(f5, 2);
    // Enumerate all 25 messages; every pair of positions must take each of
    // the 25 value pairs exactly once.
    for (uint32_t p1 = 0; p1 < spec.n; ++p1) {
        for (uint32_t p2 = p1 + 1; p2 < spec.n; ++p2) {
            std::map<std::pair<uint64_t, uint64_t>, int> counts;
            for (uint64_t a = 0; a < 5; ++a)
                for (uint64_t b = 0; b < 5; ++b) {
                    RSCodeword cw = rs_encode(spec, Message{FqVec(f5, {a, b})});
                    counts[{cw.symbols[p1], cw.symbols[p2]}]++;
                }
            CHECK(counts.size() == 25);
            for (const auto& [key, c] : counts) CHECK(c == 1);
        }
    }
}

TEST_CASE("k=1 sampling gives each constant with probability ~1/q") {
    FieldCtx f5(5);
    CodeSpec spec(f5, 1);
    Prng rng(3);
    std::vector<uint64_t> counts(5, 0);
    const int N = 20000;
    for (int t = 0; t < N; ++t) counts[sample_codeword(spec, rng).symbols[0]]++;
    double expected = N / 5.0, stat = 0;
    for (uint64_t c : counts) {
        double d = c - expected;
        stat += d * d / expected;
    }
    CHECK(stat < 18.47);  // chi-square 99.9% quantile, 4 dof
}

TEST_CASE("kwise uniformity statistic behaves") {
    FieldCtx f5(5);
    CodeSpec spec(f5, 2);
    Prng rng(17);
    double stat = kwise_uniformity_check(spec, {0, 3}, 100000, rng);
    CHECK(stat < 51.18);  // chi-square 99.9% quantile, 24 dof
    CHECK(kwise_uniformity_check(spec, {}, 10, rng) == 0.0);
    CodeSpec k1(f5, 1);
    CHECK_THROWS_WITH_AS(kwise_uniformity_check(k1, {0, 1}, 10, rng),
                         doctest::Contains("TooManyPositions"), Error);
}
