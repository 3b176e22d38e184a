#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prclab/codes.hpp"
#include "prclab/editdist.hpp"
#include "prclab/gf.hpp"
#include "prclab/prng.hpp"

namespace prclab {

// Rows of the returned matrix are all coordinate-wise products of up to r
// rows of X, repeated rows allowed (monomials of total degree <= r in the
// rows; degree 0 is the all-ones row). Row count is C(r+T, r); guarded at
// 1e5 (TooManyMonomials).
FqMatrix power_matrix(const FqMatrix& x, uint32_t r);

enum class RankAttackMode {
    NoAlphabetPerm,  // the distribution the attack is built for
    FullPermuted,    // negative control: alphabet permutations restored
};

struct RankAttackReport {
    std::vector<size_t> structured_ranks;
    std::vector<size_t> uniform_ranks;
    std::vector<size_t> structured_noisy_cols;  // columns with channel errors
    double advantage = 0.0;
    double rs_side_bound = 0.0;       // n - n(1-eta)^T + kr + 1
    double uniform_side_bound = 0.0;  // n(1 - ln r / ln q) - 1/ln q
    size_t threshold = 0;
    uint32_t trials = 0;
    bool per_trial_inequality_held = false;  // rank <= noisy cols + kr + 1
};

// Distinguishes T permuted noisy RS samples from uniform via rank(X^r):
// accept "structured" iff rank <= threshold. Each trial draws a fresh key.
RankAttackReport rank_attack(const CodeSpec& spec, double eta, uint32_t T, uint32_t r,
                             size_t threshold, uint32_t trials, RankAttackMode mode,
                             uint64_t seed, uint32_t jobs = 1);

enum class PredicateKind { ParitySubset, Majority, Dictator };

// Codewords of the planted form: bit i of the output is bit sigma_embed(i)
// of (x || f(x) || y) with x uniform on ell bits and y uniform filler.
struct PlantedPredicateSpec {
    uint32_t ell = 0;
    uint32_t n = 0;
    PredicateKind kind = PredicateKind::ParitySubset;
    std::vector<uint32_t> subset;        // predicate inputs (indices into x)
    std::vector<uint32_t> sigma_embed;   // permutation of [n]
};

std::vector<BitString> planted_sample(const PlantedPredicateSpec& ppspec, uint32_t count,
                                      Prng& rng);

struct FourierScan {
    double max_abs = 0.0;
    std::vector<uint32_t> best_set;
    uint32_t best_i = 0;
    size_t coefficients = 0;
    bool accept = false;
    double threshold = 0.0;
};

// Estimates E[chi_S(r) * r_i] in the +-1 encoding (0 -> +1, 1 -> -1) for
// all |S| <= t, i not in S; accepts "structured" iff some estimate exceeds
// the threshold in absolute value. Guarded (TooManyCoefficients).
FourierScan fourier_attack(const std::vector<BitString>& samples, uint32_t t, double threshold);

// Default acceptance threshold: 4/sqrt(count) + planted_weight / 2.
double fourier_default_threshold(size_t count, double planted_weight);

}  // namespace prclab
