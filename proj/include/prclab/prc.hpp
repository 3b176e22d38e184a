#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prclab/codes.hpp"
#include "prclab/decoding.hpp"
#include "prclab/editdist.hpp"
#include "prclab/permdist.hpp"
#include "prclab/prng.hpp"

namespace prclab {

// ---------------------------------------------------------------------------
// Substitution-robust PRC: permuted noisy codeword plus a one-time pad.
// ---------------------------------------------------------------------------

struct SubstSecretKey {
    PermKey perm;
    FqVec pad;  // o, length n
};

SubstSecretKey subst_keygen(const CodeSpec& spec, Prng& rng);

struct SubstEncodeTrace {
    FqVec word;                     // the PRC output y = Subst(permuted c) + o
    std::vector<bool> clean;        // positions the encode channel left intact
};

// eta_enc defaults to delta/3 when negative. DeltaTooLarge if the implied
// decode budget floor(delta n) exceeds the unique-decoding radius.
SubstEncodeTrace subst_encode_traced(const CodeSpec& spec, const SubstSecretKey& key,
                                     double delta, Prng& rng, double eta_enc = -1.0);
FqVec subst_encode(const CodeSpec& spec, const SubstSecretKey& key, double delta, Prng& rng,
                   double eta_enc = -1.0);

bool subst_decode(const CodeSpec& spec, const SubstSecretKey& key, const FqVec& y, double delta);

// Key-aware worst-case substitution channel: corrupts the lowest-index
// positions that the encoder's own noise left clean, so every corrupted
// symbol is a fresh error.
FqVec subst_worstcase_channel(const CodeSpec& spec, const SubstEncodeTrace& trace,
                              uint32_t budget, Prng& rng);

// Sanity check of the noise split: effective encode noise plus the channel
// budget must stay under the unique-decoding radius with 3-sigma slack.
bool subst_budgets_feasible(const CodeSpec& spec, double eta_enc, double channel_frac);

// ---------------------------------------------------------------------------
// Edit-robust binary PRC.
// ---------------------------------------------------------------------------

// Parameter ledger for the edit-robust construction. The paper-style preset
// follows the asymptotic formulas; the desk presets pin values that decode
// in sensible time at small n (see the README preset table).
struct EditParams {
    std::string name;
    uint64_t q = 0;        // base field size
    uint32_t n = 0;        // RS block length (q - 1)
    uint32_t k = 0;
    uint32_t s = 1;        // folding (1 = plain RS)
    uint32_t m = 0;        // chunks per codeword
    double c_dec = 16.0;
    double eta = 1.0 / 32; // encode-side symbol substitution rate
    uint32_t l_max = 0;    // list cap
    double p_dec = 0.5;    // SEDball Hamming parameter
    double eps_dec = 0.0;  // SEDball edit parameter
    double eps_edit = 0.0; // channel budget the preset targets (for tests)
    double p_ham_channel = 0.0;  // hamming-edit channel budget (fraction of |y|)
    uint32_t t_rec = 0;
    uint32_t probe_rounds = 150;

    uint32_t positions() const { return n / s; }            // N
    uint32_t index_bits() const;                            // ceil(log2 N)
    uint32_t value_bits() const;                            // s * ceil(log2 q)
    uint32_t chunk_bits() const { return index_bits() + value_bits(); }
    uint32_t word_bits() const { return m * chunk_bits(); }
    // Per-window budgets in bits, floored.
    uint32_t window_ham_budget() const;
    uint32_t window_edit_budget() const;
    uint64_t symbol_space() const;                          // q^s

    CodeSpec code_spec() const;

    static EditParams edit_paper(uint64_t q, double eps_edit);
    static EditParams edit_desk();
    static EditParams hamedit_desk();
    static EditParams by_name(const std::string& name);
};

struct EditSecretKey {
    PermKey perm;                 // over N positions, alphabet q^s
    std::vector<uint64_t> pad;    // o, symbol ids, length N
};

EditSecretKey edit_keygen(const EditParams& params, Prng& rng);
EditSecretKey edit_keygen_from_seed(const EditParams& params, uint64_t seed);

// The encoder's randomized map from one permuted-codes sample to a bit
// string; exposed so the uniform-in/uniform-out mechanism can be tested
// directly. z_ids holds the padded symbols z = fold(c') + o.
BitString edit_encode_from_z(const EditParams& params, const EditSecretKey& key,
                             const std::vector<uint64_t>& z_ids, Prng& rng);

BitString edit_encode(const EditParams& params, const EditSecretKey& key, Prng& rng);

struct EditEncodeTrace {
    BitString word;
    std::vector<uint32_t> chunk_index;   // i_j per chunk
    std::vector<uint64_t> chunk_symbol;  // z'_j per chunk (permuted symbol id)
};

EditEncodeTrace edit_encode_traced(const EditParams& params, const EditSecretKey& key,
                                   Prng& rng);

// Lists as reconstructed by the decoder's window scan, before and after the
// pad subtraction; exposed for the list-size and chunk-survival checks.
struct EditDecodeTrace {
    RecoveryLists lists;          // pad-subtracted candidate lists
    size_t adds_before_cap = 0;   // total insertions before the cap
    bool detected = false;
};

EditDecodeTrace edit_decode_traced(const EditParams& params, const EditSecretKey& key,
                                   const BitString& y);
bool edit_decode(const EditParams& params, const EditSecretKey& key, const BitString& y);

enum class EditStrategy { Random, BoundaryDeletions, Burst };

// Applies at most floor(eps_edit * |y|) insertions/deletions.
// BoundaryDeletions spreads single-bit deletions across chunk header
// regions (key-aware in the sense that it knows the chunk layout).
BitString edit_channel_apply(const BitString& y, double eps_edit, EditStrategy strategy,
                             const EditParams& params, Prng& rng);

// Random bit flips, floor(frac * |y|) of them, for the hamming-edit channel.
BitString flip_channel_apply(const BitString& y, double frac, Prng& rng);

// ---------------------------------------------------------------------------
// Key file and bit-string I/O.
// ---------------------------------------------------------------------------

std::string subst_key_to_json(const CodeSpec& spec, const SubstSecretKey& key,
                              bool arrays = false);
struct LoadedSubstKey {
    CodeSpec spec;
    SubstSecretKey key;
};
LoadedSubstKey subst_key_from_json(const std::string& text);

std::string edit_key_to_json(const EditParams& params, const EditSecretKey& key,
                             bool arrays = false);
struct LoadedEditKey {
    EditParams params;
    EditSecretKey key;
};
LoadedEditKey edit_key_from_json(const std::string& text);

// Hex wire format: "<bitlen> <hex>", MSB-first within bytes, final partial
// byte zero-padded.
std::string bits_to_hex(const BitString& bits);
BitString hex_to_bits(const std::string& text);

}  // namespace prclab
