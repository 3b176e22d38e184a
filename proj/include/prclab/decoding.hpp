#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "prclab/codes.hpp"

namespace prclab {

// Per-position candidate sets for list recovery. Symbols are stored as
// integer ids: the field value for RS, or the base-q digit encoding of the
// s-tuple for folded codes (least significant digit = first tuple entry).
struct RecoveryLists {
    std::vector<std::vector<uint64_t>> lists;
    uint64_t ell_max = 0;

    size_t max_list_size() const;
    size_t total_mass() const;
};

struct RecoveredCodeword {
    Message message;
    uint32_t agreement = 0;
};

struct RecoveryResult {
    std::vector<RecoveredCodeword> codewords;  // sorted by message coeffs

    bool contains(const Message& m) const;
};

uint64_t frs_tuple_index(const CodeSpec& spec, const std::vector<uint64_t>& tuple);
std::vector<uint64_t> frs_index_tuple(const CodeSpec& spec, uint64_t index);

// Symbol ids of a message's codeword, one per position (N positions for
// folded codes, n for plain RS).
std::vector<uint64_t> encode_symbol_ids(const CodeSpec& spec, const Message& msg);

uint32_t agreement_count(const CodeSpec& spec, const Message& msg, const RecoveryLists& lists);

// Unique decoding by Berlekamp-Welch rational interpolation: solve for an
// error locator E(X) and Q(X) = p(X) E(X) from the received word, then
// divide. Returns the unique message within Hamming distance max_errors of
// `received`, or nullopt (NoCodeword). Requires spec.s == 1 and
// max_errors <= floor((n-k)/2), else BudgetTooLarge.
std::optional<Message> unique_decode(const CodeSpec& spec, const FqVec& received,
                                     uint32_t max_errors);

// Exhaustive oracle over all q^k messages; guarded by q^k <= 2^24
// (OracleTooLarge). Independent of the algebraic decoders.
RecoveryResult list_recover_bruteforce(const CodeSpec& spec, const RecoveryLists& lists,
                                       uint32_t t_rec);

// Guruswami-Sudan list recovery for plain RS (spec.s == 1): interpolate a
// nonzero bivariate Q vanishing with multiplicity w on all (gamma^i, y)
// pairs, extract Y-roots of degree < k, filter by agreement >= t_rec.
// The multiplicity escalates from 1 until the monomial count certifies
// completeness at t_rec; the classical guarantee requires
// t_rec >= sqrt((k-1) ell n) with ell the largest list (else
// AgreementBelowGuarantee). InterpolationTooLarge if certification would
// need a system beyond the size guard.
RecoveryResult list_recover_rs(const CodeSpec& spec, const RecoveryLists& lists, uint32_t t_rec);

// Folded-code list recovery (s >= 2). Desk-scale implementation delegates
// to the exhaustive oracle; the guarantee precondition
// t_rec >= k (N ell)^(1/(s+1)) + 2 is still enforced.
RecoveryResult list_recover_frs(const CodeSpec& spec, const RecoveryLists& lists, uint32_t t_rec);

// Seeded interpolation-sampling recovery for plain RS with small k: draws
// k-position subsets, interpolates every value combination from the lists
// (meet-in-the-middle pruned through a pivot position), and keeps
// candidates whose full agreement reaches t_rec. Finds every codeword of
// agreement >= t_rec with probability >= 1 - (1 - (a/n)^(k+1))^rounds where
// a is that codeword's agreement; used where the Guruswami-Sudan
// certification region excludes the operating point. Deterministic given
// the seed.
struct ProbeOptions {
    uint32_t rounds = 100;
    uint64_t seed = 0x70726F6265ull;
};
RecoveryResult list_recover_probe(const CodeSpec& spec, const RecoveryLists& lists,
                                  uint32_t t_rec, const ProbeOptions& opts = {});

}  // namespace prclab
