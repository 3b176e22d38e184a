#include <algorithm>

#include "doctest.h"
#include "prclab/decoding.hpp"
#include "prclab/prng.hpp"

using namespace prclab;

namespace {

RecoveryLists lists_from(const std::vector<std::vector<uint64_t>>& v, uint64_t ell) {
    return RecoveryLists{v, ell};
}

bool same_message_sets(const RecoveryResult& a, const RecoveryResult& b) {
    if (a.codewords.size() != b.codewords.size()) return false;
    std::vector<std::vector<uint64_t>> ma, mb;
    for (const auto& c : a.codewords) ma.push_back(c.message.coeffs.elems);
    for (const auto& c : b.codewords) mb.push_back(c.message.coeffs.elems);
    std::sort(ma.begin(), ma.end());
    std::sort(mb.begin(), mb.end());
    return ma == mb;
}

}  // namespace

TEST_CASE("unique_decode round trips and rejects over-budget requests") {
    FieldCtx f5(5);
    CodeSpec spec(f5, 2);  // n=4, radius 1
    Message m{FqVec(f5, {1, 2})};
    RSCodeword cw = rs_encode(spec, m);  // (3,0,4,2)

    auto zero = unique_decode(spec, cw.symbols, 0);
    REQUIRE(zero.has_value());
    CHECK(zero->coeffs.elems == m.coeffs.elems);

    FqVec corrupted(f5, {3, 1, 4, 2});
    auto one = unique_decode(spec, corrupted, 1);
    REQUIRE(one.has_value());
    CHECK(one->coeffs.elems == m.coeffs.elems);

    CHECK_THROWS_WITH_AS(unique_decode(spec, cw.symbols, 2),
                         doctest::Contains("BudgetTooLarge"), Error);
}

TEST_CASE("unique_decode NoCodeword rate on random words is exactly 32% at q=5,k=2") {
    // Balls of radius 1 around the 25 codewords are disjoint (min distance 3)
    // and cover 25 * 17 = 425 of the 625 words, so exactly 200 words decode
    // to nothing.
    FieldCtx f5(5);
    CodeSpec spec(f5, 2);
    int none = 0;
    for (uint64_t w = 0; w < 625; ++w) {
        FqVec v(f5, 4);
        uint64_t rest = w;
        for (int i = 0; i < 4; ++i) {
            v[i] = rest % 5;
            rest /= 5;
        }
        if (!unique_decode(spec, v, 1)) ++none;
    }
    CHECK(none == 200);
}

TEST_CASE("unique_decode exhaustive single-error sweep at q=7, k=2") {
    FieldCtx f7(7);
    CodeSpec spec(f7, 2);  // n=6, radius 2
    for (uint64_t a = 0; a < 7; ++a) {
        for (uint64_t b = 0; b < 7; ++b) {
            Message m{FqVec(f7, {a, b})};
            RSCodeword cw = rs_encode(spec, m);
            for (uint32_t pos = 0; pos < spec.n; ++pos) {
                for (uint64_t delta = 1; delta < 7; ++delta) {
                    FqVec corrupted = cw.symbols;
                    corrupted[pos] = f7.add(corrupted[pos], delta);
                    auto dec = unique_decode(spec, corrupted, 2);
                    REQUIRE(dec.has_value());
                    CHECK(dec->coeffs.elems == m.coeffs.elems);
                }
            }
        }
    }
}

TEST_CASE("brute-force recovery endpoints") {
    FieldCtx f5(5);
    CodeSpec spec(f5, 2);
    // All-full lists, threshold n: everything agrees everywhere.
    std::vector<std::vector<uint64_t>> full(4, {0, 1, 2, 3, 4});
    auto all = list_recover_bruteforce(spec, lists_from(full, 5), 4);
    CHECK(all.codewords.size() == 25);

    std::vector<std::vector<uint64_t>> empty(4);
    auto none = list_recover_bruteforce(spec, lists_from(empty, 0), 1);
    CHECK(none.codewords.empty());
}

TEST_CASE("brute-force finds a planted codeword behind decoys") {
    FieldCtx f5(5);
    CodeSpec spec(f5, 2);
    Message m{FqVec(f5, {1, 2})};  // codeword (3,0,4,2)
    std::vector<std::vector<uint64_t>> l(4);
    l[0] = {3};
    l[1] = {0};
    l[2] = {4};
    l[3] = {1};  // decoy, codeword has 2 here
    auto res = list_recover_bruteforce(spec, lists_from(l, 1), 3);
    CHECK(res.contains(m));
    for (const auto& rc : res.codewords) CHECK(rc.agreement >= 3);
}

TEST_CASE("oracle guard") {
    FieldCtx f257(257);
    CodeSpec spec(f257, 16);
    RecoveryLists lists{std::vector<std::vector<uint64_t>>(spec.n), 0};
    CHECK_THROWS_WITH_AS(list_recover_bruteforce(spec, lists, 1),
                         doctest::Contains("OracleTooLarge"), Error);
}

TEST_CASE("GS list recovery equals brute force on planted and random instances") {
    FieldCtx f13(13);
    CodeSpec spec(f13, 2);  // n=12
    const uint32_t t_rec = 5;  // ceil(sqrt((k-1) * ell * n)) with ell=2
    Prng rng(77);
    int planted_seen = 0;
    for (int inst = 0; inst < 100; ++inst) {
        std::vector<std::vector<uint64_t>> l(12);
        for (auto& s : l) {
            size_t size = rng.uniform_below(3);
            while (s.size() < size) {
                uint64_t v = rng.uniform_below(13);
                if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
            }
        }
        if (inst % 2 == 0) {
            // Plant a codeword into t_rec + 1 random positions.
            Message m{FqVec(f13, {rng.uniform_below(13), rng.uniform_below(13)})};
            RSCodeword cw = rs_encode(spec, m);
            auto order = rng.permutation(12);
            for (uint32_t j = 0; j < t_rec + 1; ++j) {
                auto& s = l[order[j]];
                uint64_t v = cw.symbols[order[j]];
                if (std::find(s.begin(), s.end(), v) == s.end()) {
                    if (s.size() >= 2) s.pop_back();
                    s.push_back(v);
                }
            }
        }
        RecoveryLists lists = lists_from(l, 2);
        auto gs = list_recover_rs(spec, lists, t_rec);
        auto oracle = list_recover_bruteforce(spec, lists, t_rec);
        CHECK(same_message_sets(gs, oracle));
        if (!oracle.codewords.empty()) ++planted_seen;
        for (const auto& rc : gs.codewords) {
            CHECK(rc.agreement >= t_rec);
            CHECK(agreement_count(spec, rc.message, lists) == rc.agreement);
        }
    }
    CHECK(planted_seen > 20);  // the sweep actually exercises nonempty outputs
}

TEST_CASE("GS recovers a clean codeword from singleton lists") {
    FieldCtx f13(13);
    CodeSpec spec(f13, 2);
    Prng rng(5);
    Message m = sample_message(spec, rng);
    RSCodeword cw = rs_encode(spec, m);
    std::vector<std::vector<uint64_t>> l(12);
    for (uint32_t i = 0; i < 12; ++i) l[i] = {cw.symbols[i]};
    auto res = list_recover_rs(spec, lists_from(l, 1), 12);
    REQUIRE(res.codewords.size() == 1);
    CHECK(res.codewords[0].message.coeffs.elems == m.coeffs.elems);
    CHECK(res.codewords[0].agreement == 12);
}

TEST_CASE("GS rejects thresholds below the agreement guarantee") {
    FieldCtx f13(13);
    CodeSpec spec(f13, 2);
    std::vector<std::vector<uint64_t>> l(12, {0, 1});
    CHECK_THROWS_WITH_AS(list_recover_rs(spec, lists_from(l, 2), 4),
                         doctest::Contains("AgreementBelowGuarantee"), Error);
}

TEST_CASE("FRS recovery endpoints and oracle delegation") {
    FieldCtx f13(13);
    CodeSpec spec(f13, 2, 2);  // N = 6 tuples of size 2
    Prng rng(9);
    Message m = sample_message(spec, rng);
    auto ids = encode_symbol_ids(spec, m);
    REQUIRE(ids.size() == 6);

    // guarantee bound k (N ell)^(1/(s+1)) + 2 = 2 * 6^(1/3) + 2 = 5.63
    std::vector<std::vector<uint64_t>> l(6);
    for (uint32_t i = 0; i < 6; ++i) l[i] = {ids[i]};
    auto res = list_recover_frs(spec, lists_from(l, 1), 6);
    CHECK(res.contains(m));

    std::vector<std::vector<uint64_t>> empty(6);
    CHECK(list_recover_frs(spec, lists_from(empty, 0), 6).codewords.empty());

    CHECK_THROWS_WITH_AS(list_recover_frs(CodeSpec(f13, 2, 1), lists_from(l, 1), 6),
                         doctest::Contains("FoldMismatch"), Error);
    CHECK_THROWS_WITH_AS(list_recover_frs(spec, lists_from(l, 1), 3),
                         doctest::Contains("AgreementBelowGuarantee"), Error);
}

TEST_CASE("FRS tuple index round trip") {
    FieldCtx f13(13);
    CodeSpec spec(f13, 2, 4);
    Prng rng(11);
    for (int t = 0; t < 50; ++t) {
        std::vector<uint64_t> tuple(4);
        for (auto& v : tuple) v = rng.uniform_below(13);
        CHECK(frs_index_tuple(spec, frs_tuple_index(spec, tuple)) == tuple);
    }
}

TEST_CASE("probe recovery matches the oracle on planted desk-scale instances") {
    FieldCtx f13(13);
    CodeSpec spec(f13, 4);  // n=12, k=4 mirrors the edit decoder's shape
    Prng rng(123);
    for (int inst = 0; inst < 40; ++inst) {
        std::vector<std::vector<uint64_t>> l(12);
        for (auto& s : l) {
            size_t size = 1 + rng.uniform_below(2);
            while (s.size() < size) {
                uint64_t v = rng.uniform_below(13);
                if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
            }
        }
        Message m = sample_message(spec, rng);
        RSCodeword cw = rs_encode(spec, m);
        auto order = rng.permutation(12);
        for (uint32_t j = 0; j < 10; ++j) {
            auto& s = l[order[j]];
            uint64_t v = cw.symbols[order[j]];
            if (std::find(s.begin(), s.end(), v) == s.end()) {
                s.pop_back();
                s.push_back(v);
            }
        }
        RecoveryLists lists = lists_from(l, 2);
        auto probe = list_recover_probe(spec, lists, 8, ProbeOptions{200, 7});
        auto oracle = list_recover_bruteforce(spec, lists, 8);
        CHECK(same_message_sets(probe, oracle));
    }
}
