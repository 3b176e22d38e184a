#pragma once

#include <cstdint>
#include <vector>

#include "prclab/prc.hpp"

namespace prclab {

// Binary autoregressive toy model with a controllable per-token entropy
// floor. fixed-entropy mode emits a constant conditional probability p with
// H2(p) = alpha (upper branch, p >= 1/2); seeded-context-hash derives p
// from a 32-bit sm64ctr hash of the last 8 tokens, clamped so per-token
// entropy never drops below alpha.
struct ToyModel {
    enum class Mode { FixedEntropy, SeededContextHash };
    Mode mode = Mode::FixedEntropy;
    double alpha = 1.0;
    uint64_t seed = 0;

    // P(next token = 1 | context).
    double p_next(const BitString& context) const;
};

// Inverse binary entropy: the p in [lo branch or hi branch] with H2(p) = alpha.
double binary_entropy(double p);
double binary_entropy_inv_upper(double alpha);  // p in [1/2, 1]
double binary_entropy_inv_lower(double alpha);  // p in [0, 1/2]

struct WatermarkKey {
    EditParams params;
    EditSecretKey prc_key;
    std::vector<BitString> pads;  // one-time pads, one per block

    uint32_t imax() const { return static_cast<uint32_t>(pads.size()); }
};

WatermarkKey wat_setup(const EditParams& params, uint32_t imax, Prng& rng);

struct TokenSeq {
    BitString bits;
    std::vector<double> trace;  // conditional P(token=1) per position
};

// The sampling rule Ber(p - (-1)^x * min(p, 1-p)): probability that the
// emitted token is 1 given model probability p and carrier bit x.
double wat_embed_prob(double p, int x_bit);

// Generates ell tokens, refreshing the carrier block x = pad_b XOR Enc(sk)
// every word_bits positions. LengthExceedsImax if ell needs more blocks
// than Setup provisioned.
TokenSeq wat_generate(const WatermarkKey& key, const ToyModel& model, uint32_t ell, Prng& rng);

struct DetectOptions {
    // Window starts are chunk-quantized offsets around each block's nominal
    // start, covering net channel drift up to start_band bits; residual
    // drift inside a window is handled by the slot scan's local band.
    uint32_t start_band = 70;
    int32_t slot_band_lo = -6;
    int32_t slot_band_hi = 7;
};

bool wat_detect(const WatermarkKey& key, const BitString& tok, const DetectOptions& opts = {});

// Empirical entropy (bits) of the observed tokens over positions [i, j],
// 1-indexed inclusive, from the recorded trace. MissingTrace if absent.
double empirical_entropy(const TokenSeq& tok, size_t i, size_t j);

// Robustness entropy threshold beta_lambda(ell) = 8 alpha ell + 2 sqrt(2) lambda.
double beta_threshold(double alpha, double lambda, double ell);

}  // namespace prclab
