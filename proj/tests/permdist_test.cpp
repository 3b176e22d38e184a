#include <cmath>
#include <map>

#include "doctest.h"
#include "prclab/permdist.hpp"

using namespace prclab;

TEST_CASE("perm keys replay from their seed and validate as bijections") {
    PermKey a = PermKey::from_seed(6, 5, 42);
    PermKey b = PermKey::from_seed(6, 5, 42);
    CHECK(a.sigma == b.sigma);
    CHECK(a.pis == b.pis);
    // from_arrays re-validates what from_seed produced
    PermKey c = PermKey::from_arrays(6, 5, a.sigma, a.pis);
    CHECK(c.sigma == a.sigma);
    auto bad_sigma = a.sigma;
    bad_sigma[0] = bad_sigma[1];
    CHECK_THROWS_WITH_AS(PermKey::from_arrays(6, 5, bad_sigma, a.pis),
                         doctest::Contains("BadPermutation"), Error);
    for (uint32_t i = 0; i < 6; ++i)
        for (uint32_t v = 0; v < 5; ++v) CHECK(a.pis[i][a.pi_inv(i, v)] == v);
    for (uint32_t i = 0; i < 6; ++i) CHECK(a.sigma[a.sigma_inv(i)] == i);
}

TEST_CASE("substitution channel endpoints and effective rate") {
    FieldCtx f5(5);
    Prng rng(7);
    FqVec x(f5, {1, 2, 3, 4, 0});

    FqVec same = subst_channel(f5, x, 0.0, rng);
    CHECK(same.elems == x.elems);

    // eta = 1: single-position output uniform over F_5
    std::vector<uint64_t> counts(5, 0);
    FqVec one(f5, std::vector<uint64_t>{2});
    for (int t = 0; t < 100000; ++t) counts[subst_channel(f5, one, 1.0, rng)[0]]++;
    double expct = 20000, stat = 0;
    for (auto c : counts) {
        double d = c - expct;
        stat += d * d / expct;
    }
    CHECK(stat < 18.47);  // 99.9% quantile, 4 dof

    // changed fraction concentrates on eta (1 - 1/q)
    double eta = 1.0 / 32;
    size_t changed = 0, total = 0;
    FqVec w(f5, std::vector<uint64_t>(32, 3));
    for (int t = 0; t < 10000; ++t) {
        FqVec out = subst_channel(f5, w, eta, rng);
        for (size_t i = 0; i < w.size(); ++i)
            if (out[i] != w[i]) ++changed;
        total += w.size();
    }
    double eff = eta * (1.0 - 1.0 / 5.0);
    double sd = std::sqrt(eff * (1 - eff) * static_cast<double>(total));
    CHECK(std::fabs(static_cast<double>(changed) - eff * total) < 3 * sd);
}

TEST_CASE("permuted trivial code is uniform; samples replay by seed") {
    FieldCtx f3(3);
    TrivialCode trivial(f3, 2);
    PermKey key = PermKey::from_seed(2, 3, 9);
    Prng rng(10);
    std::map<std::pair<uint64_t, uint64_t>, uint64_t> counts;
    const int N = 100000;
    auto samples = sample_permuted_codes(trivial, key, 0.3, N, rng);
    for (const auto& s : samples) counts[{s[0], s[1]}]++;
    double expct = N / 9.0, stat = 0;
    for (const auto& [k, c] : counts) {
        double d = static_cast<double>(c) - expct;
        stat += d * d / expct;
    }
    CHECK(stat < 26.12);  // 99.9% quantile, 8 dof

    Prng r1(77), r2(77);
    auto s1 = sample_permuted_codes(trivial, key, 0.5, 3, r1);
    auto s2 = sample_permuted_codes(trivial, key, 0.5, 3, r2);
    for (int i = 0; i < 3; ++i) CHECK(s1[i].elems == s2[i].elems);
}

TEST_CASE("single-position marginals of permuted RS samples are uniform") {
    FieldCtx f5(5);
    CodeSpec spec(f5, 2);
    RSCodeModel code(spec);
    PermKey key = PermKey::from_seed(4, 5, 13);
    Prng rng(14);
    auto samples = sample_permuted_codes(code, key, 0.1, 20000, rng);
    std::vector<uint64_t> counts(5, 0);
    for (const auto& s : samples) counts[s[2]]++;
    double expct = samples.size() / 5.0, stat = 0;
    for (auto c : counts) {
        double d = static_cast<double>(c) - expct;
        stat += d * d / expct;
    }
    CHECK(stat < 18.47);
}

TEST_CASE("no-alphabet-perm with identity sigma and zero noise returns raw codewords") {
    FieldCtx f5(5);
    CodeSpec spec(f5, 2);
    RSCodeModel code(spec);
    std::vector<uint32_t> identity{0, 1, 2, 3};
    Prng rng(15);
    auto all = code.enumerate();
    auto samples = sample_no_alphabet_perm(code, identity, 0.0, 50, rng);
    for (const auto& s : samples) {
        bool is_codeword = false;
        for (const auto& c : all)
            if (c.elems == s.elems) is_codeword = true;
        CHECK(is_codeword);
    }
}

TEST_CASE("exact TV: trivial code is exactly uniform") {
    FieldCtx f2(2);
    TrivialCode trivial(f2, 2);
    CHECK(exact_tv_tiny(trivial, f2, 0.25, 1) <= 1e-12);
    TrivialCode trivial4(f2, 4);
    CHECK(exact_tv_tiny(trivial4, f2, 0.25, 1) <= 1e-12);
}

TEST_CASE("exact TV: even-weight code obeys the branching-program bound") {
    FieldCtx f2(2);
    ParityCheckCode parity(f2, 4);
    uint32_t d = dual_distance_tiny(parity, f2);
    CHECK(d == 4);  // dual of the even-weight code is the repetition code

    double eta = 0.25;
    double tv = exact_tv_tiny(parity, f2, eta, 1);
    CHECK(tv > 0.0);
    // n T binom(n + q^T - 1, q^T - 1) (1-eta)^(d/2)
    double bound = 4.0 * 1.0 * 5.0 * std::pow(1.0 - eta, d / 2.0);
    CHECK(tv <= bound);

    // and at eta = 0 a nontrivial code sits strictly away from uniform
    CHECK(exact_tv_tiny(parity, f2, 0.0, 1) > 0.1);
}

TEST_CASE("exact TV is monotone nonincreasing in eta") {
    FieldCtx f2(2);
    ParityCheckCode parity(f2, 4);
    double last = 2.0;
    for (double eta : {0.0, 0.1, 0.25, 0.5}) {
        double tv = exact_tv_tiny(parity, f2, eta, 1);
        CHECK(tv <= last + 1e-12);
        last = tv;
    }
}

TEST_CASE("exact TV guard") {
    FieldCtx f2(2);
    TrivialCode big(f2, 16);
    CHECK_THROWS_WITH_AS(exact_tv_tiny(big, f2, 0.1, 2),
                         doctest::Contains("TooLargeToEnumerate"), Error);
}

TEST_CASE("character sums vanish on low-weight linear tests") {
    // Dual distance 4: every nonzero z with at most 2 nonzeros has
    // E[chi_z] = 0 under the permuted even-weight distribution.
    FieldCtx f2(2);
    ParityCheckCode parity(f2, 4);
    Prng rng(21);
    const int N = 100000;
    PermKey key = PermKey::from_seed(4, 2, 5);
    auto samples = sample_permuted_codes(parity, key, 0.25, N, rng);
    for (uint32_t z = 1; z < 16; ++z) {
        if (__builtin_popcount(z) > 2) continue;
        int64_t sum = 0;
        for (const auto& s : samples) {
            int dot = 0;
            for (uint32_t i = 0; i < 4; ++i)
                if ((z >> i) & 1) dot ^= static_cast<int>(s[i]);
            sum += dot ? -1 : 1;
        }
        double mean = static_cast<double>(sum) / N;
        CHECK(std::fabs(mean) < 4.0 / std::sqrt(static_cast<double>(N)));
    }
}

TEST_CASE("puzzle samples: endpoints, marginals, determinism") {
    FieldCtx f3(3);
    TrivialCode trivial(f3, 4);
    Prng rng(31);
    auto pi = random_global_perm(4, 3, rng);

    auto none = sample_permuted_puzzles(trivial, pi, 5, 0, rng);
    for (const auto& s : none) CHECK(s.tuples.empty());

    auto samples = sample_permuted_puzzles(trivial, pi, 20000, 3, rng);
    std::vector<uint64_t> counts(12, 0);
    for (const auto& s : samples)
        for (uint32_t t : s.tuples) counts[t]++;
    double expct = 20000 * 3 / 12.0, stat = 0;
    for (auto c : counts) {
        double d = static_cast<double>(c) - expct;
        stat += d * d / expct;
    }
    CHECK(stat < 31.26);  // 99.9% quantile, 11 dof

    Prng r1(8), r2(8);
    auto a = sample_permuted_puzzles(trivial, pi, 3, 2, r1);
    auto b = sample_permuted_puzzles(trivial, pi, 3, 2, r2);
    for (int i = 0; i < 3; ++i) CHECK(a[i].tuples == b[i].tuples);
}

TEST_CASE("puzzles-to-codes converter recovers the hidden partition") {
    FieldCtx f5(5);
    ParityCheckCode code(f5, 8);
    Prng rng(41);
    auto pi = random_global_perm(8, 5, rng);
    auto samples = sample_permuted_puzzles(code, pi, 4800, 7, rng);

    ConvertResult res = puzzles_to_codes_convert(samples, 8, f5, 0.5, rng);
    REQUIRE(res.classes.size() == 8);
    // Each recovered class must be {pi(i, v) : v} for a single index i.
    std::vector<uint32_t> owner(40);
    for (uint32_t i = 0; i < 8; ++i)
        for (uint32_t v = 0; v < 5; ++v) owner[pi[i * 5 + v]] = i;
    for (const auto& cls : res.classes) {
        REQUIRE(cls.size() == 5);
        for (uint32_t e : cls) CHECK(owner[e] == owner[cls[0]]);
    }
    // Conversion produced mostly non-failed samples.
    size_t ok = 0;
    for (const auto& s : res.samples)
        if (s) ++ok;
    CHECK(ok > res.samples.size() / 2);
}

TEST_CASE("converter reports an inconsistent partition when starved") {
    FieldCtx f5(5);
    ParityCheckCode code(f5, 8);
    Prng rng(43);
    auto pi = random_global_perm(8, 5, rng);
    auto samples = sample_permuted_puzzles(code, pi, 10, 7, rng);
    CHECK_THROWS_WITH_AS(puzzles_to_codes_convert(samples, 8, f5, 0.5, rng),
                         doctest::Contains("PartitionInconsistent"), Error);
}

TEST_CASE("sample dump round trip with header") {
    FieldCtx f5(5);
    Prng rng(51);
    std::vector<FqVec> samples;
    for (int i = 0; i < 4; ++i) {
        FqVec v(f5, 3);
        for (auto& x : v.elems) x = rng.uniform_below(5);
        samples.push_back(v);
    }
    std::string text = dump_samples(samples, 5, 0.25);
    CHECK(text.substr(0, 28) == "# permdist v1 n=3 q=5 T=4 et");
    auto parsed = parse_samples(f5, text);
    REQUIRE(parsed.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(parsed[i].elems == samples[i].elems);
}
