#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prclab/codes.hpp"
#include "prclab/prng.hpp"

namespace prclab {

// Key of the permuted-codes distribution: an index permutation sigma of [n]
// and per-position alphabet permutations pi_1..pi_n of [0, q). Regenerable
// from an 8-byte seed via the sm64ctr generator, so keys serialize as the
// seed plus dimensions.
struct PermKey {
    uint32_t n = 0;
    uint64_t q = 0;
    std::optional<uint64_t> source_seed;
    std::vector<uint32_t> sigma;
    std::vector<std::vector<uint32_t>> pis;

    static PermKey from_seed(uint32_t n, uint64_t q, uint64_t seed);
    // Validates that sigma and every pi are bijections.
    static PermKey from_arrays(uint32_t n, uint64_t q, std::vector<uint32_t> sigma,
                               std::vector<std::vector<uint32_t>> pis);

    uint32_t sigma_inv(uint32_t i) const;
    uint64_t pi_inv(uint32_t i, uint64_t v) const;
};

// Substitution channel: each symbol is independently replaced by a uniform
// symbol with probability eta (the replacement may equal the original).
FqVec subst_channel(const FieldCtx& ctx, const FqVec& x, double eta, Prng& rng);

// T samples of D_{n, F_q, C, eta, T}: uniform codeword, doubly permuted,
// then the substitution channel.
std::vector<FqVec> sample_permuted_codes(const CodeModel& code, const PermKey& key, double eta,
                                         uint64_t T, Prng& rng);

// Variant without the alphabet permutations (index permutation only).
std::vector<FqVec> sample_no_alphabet_perm(const CodeModel& code,
                                           const std::vector<uint32_t>& sigma, double eta,
                                           uint64_t T, Prng& rng);

// One permuted-puzzles sample: m draws i_j from [n] with replacement, each
// reported as pi_global(i_j, c_{i_j}). Elements of [n] x [0,q) are flattened
// as i*q + v.
struct PuzzleSample {
    std::vector<uint32_t> tuples;
};

std::vector<uint32_t> random_global_perm(uint32_t n, uint64_t q, Prng& rng);

std::vector<PuzzleSample> sample_permuted_puzzles(const CodeModel& code,
                                                  const std::vector<uint32_t>& pi_global,
                                                  uint64_t T, uint32_t m, Prng& rng);

// Converter from the permuted-puzzles distribution to the permuted-codes
// distribution: learn the partition of [n] x [0,q) into n alphabet classes
// by the never-co-occur rule, then rebuild substitution-channel samples.
// Needs on the order of lambda (nq)^2 input samples for the partition to
// resolve; PartitionInconsistent signals too few. Individual samples can
// come out as nullopt ("fail") when the binomial draw asks for more
// error-free positions than the sample covers.
struct ConvertResult {
    std::vector<std::vector<uint32_t>> classes;     // the recovered sets S_l
    std::vector<std::optional<FqVec>> samples;      // converted samples
};

ConvertResult puzzles_to_codes_convert(const std::vector<PuzzleSample>& samples, uint32_t n,
                                       const FieldCtx& ctx, double eta, Prng& rng);

// Exact total-variation distance between D_{n, F_q, C, eta, T} and uniform
// by full enumeration of keys, codewords and channel noise. Guarded to tiny
// instances (TooLargeToEnumerate). Kahan-summed.
double exact_tv_tiny(const CodeModel& code, const FieldCtx& ctx, double eta, uint64_t T);

// Dual distance of a tiny linear code by exhaustive dual-vector search.
uint32_t dual_distance_tiny(const CodeModel& code, const FieldCtx& ctx);

// Sample dump format: header line "# permdist v1 n=<n> q=<q> T=<T> eta=<eta>",
// then one sample per line as base-10 symbols separated by spaces.
std::string dump_samples(const std::vector<FqVec>& samples, uint64_t q, double eta);
std::vector<FqVec> parse_samples(const FieldCtx& ctx, const std::string& text);

}  // namespace prclab
