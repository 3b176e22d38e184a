#include "prclab/watermark.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace prclab {

namespace {

uint64_t sm64_mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double binary_entropy_inv_upper(double alpha) {
    double lo = 0.5, hi = 1.0;  // H2 decreasing on [1/2, 1]
    for (int it = 0; it < 80; ++it) {
        double mid = (lo + hi) / 2;
        if (binary_entropy(mid) >= alpha)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

double binary_entropy_inv_lower(double alpha) { return 1.0 - binary_entropy_inv_upper(alpha); }

double ToyModel::p_next(const BitString& context) const {
    if (mode == Mode::FixedEntropy) return binary_entropy_inv_upper(alpha);
    uint64_t packed = 1;  // length marker so short contexts hash distinctly
    size_t start = context.size() > 8 ? context.size() - 8 : 0;
    for (size_t i = start; i < context.size(); ++i) packed = (packed << 1) | context[i];
    uint32_t h = static_cast<uint32_t>(sm64_mix(seed ^ (packed * 0x9E3779B97F4A7C15ull)));
    double p = static_cast<double>(h) / 4294967296.0;
    double floor_p = binary_entropy_inv_lower(alpha);
    return std::clamp(p, floor_p, 1.0 - floor_p);
}

WatermarkKey wat_setup(const EditParams& params, uint32_t imax, Prng& rng) {
    WatermarkKey key;
    key.params = params;
    key.prc_key = edit_keygen(params, rng);
    key.pads.resize(imax);
    for (auto& pad : key.pads) {
        pad.resize(params.word_bits());
        for (auto& b : pad) b = static_cast<uint8_t>(rng.uniform_below(2));
    }
    return key;
}

double wat_embed_prob(double p, int x_bit) {
    double m = std::min(p, 1.0 - p);
    return x_bit ? p + m : p - m;
}

TokenSeq wat_generate(const WatermarkKey& key, const ToyModel& model, uint32_t ell, Prng& rng) {
    uint32_t W = key.params.word_bits();
    if (ell > key.imax() * static_cast<uint64_t>(W))
        throw Error("LengthExceedsImax", "requested length needs more pads than Setup made");
    TokenSeq out;
    out.bits.reserve(ell);
    out.trace.reserve(ell);
    BitString x;
    for (uint32_t i = 0; i < ell; ++i) {
        if (i % W == 0) {
            uint32_t block = i / W;
            BitString enc = edit_encode(key.params, key.prc_key, rng);
            x = key.pads[block];
            for (uint32_t b = 0; b < W; ++b) x[b] ^= enc[b];
        }
        double p = model.p_next(out.bits);
        double p1 = wat_embed_prob(p, x[i % W]);
        out.bits.push_back(rng.bernoulli(p1) ? 1 : 0);
        out.trace.push_back(p);
    }
    return out;
}

namespace {

// Pad-aware window decode: scan chunk slots of one hypothesized block,
// trying slot-quantized drifts inside [lo, hi]; candidates are parsed from
// the observed bits XORed with the pad slice at the slot's original
// position. Recovery runs on the pad-subtracted lists exactly as in the
// raw PRC decoder.
bool padded_window_decode(const EditParams& params, const EditSecretKey& key,
                          const BitString& pad, const BitString& tok, int64_t window_start,
                          int32_t lo, int32_t hi) {
    uint32_t N = params.positions();
    uint64_t R = params.symbol_space();
    uint32_t cb = params.chunk_bits();
    uint32_t vb = params.value_bits();
    uint32_t qbits = 0;
    while ((1ull << qbits) < params.q) ++qbits;
    if (qbits == 0) qbits = 1;

    std::vector<std::vector<uint32_t>> pis_inv(N, std::vector<uint32_t>(R));
    for (uint32_t i = 0; i < N; ++i)
        for (uint32_t v = 0; v < R; ++v) pis_inv[i][key.perm.pis[i][v]] = v;

    std::vector<std::vector<uint64_t>> lists(N);
    std::vector<std::unordered_set<uint64_t>> seen(N);
    for (uint32_t slot = 0; slot < params.m; ++slot) {
        int64_t orig = static_cast<int64_t>(slot) * cb;
        for (int32_t drift = lo; drift <= hi; ++drift) {
            int64_t pos = window_start + orig + drift;
            if (pos < 0 || pos + cb > static_cast<int64_t>(tok.size())) continue;
            uint64_t pattern = 0;
            for (uint32_t b = 0; b < cb; ++b)
                pattern = (pattern << 1) |
                          (static_cast<uint64_t>(tok[pos + b]) ^ pad[orig + b]);
            uint64_t idx = pattern >> vb;
            if (idx >= N) continue;
            uint64_t id_acc = 0, mul = 1;
            bool ok = true;
            for (uint32_t t = 0; t < params.s; ++t) {
                uint32_t shift = vb - (t + 1) * qbits;
                uint64_t digit = (pattern >> shift) & ((1ull << qbits) - 1);
                if (digit >= params.q) {
                    ok = false;
                    break;
                }
                id_acc += digit * mul;
                mul *= params.q;
            }
            if (!ok) continue;
            uint64_t val = pis_inv[idx][id_acc];
            uint32_t w = key.perm.sigma[idx];
            if (!seen[w].insert(val).second) continue;
            if (lists[w].size() < params.l_max) lists[w].push_back(val);
        }
    }

    RecoveryLists rl;
    rl.ell_max = params.l_max;
    rl.lists.resize(N);
    for (uint32_t w = 0; w < N; ++w) {
        rl.lists[w].reserve(lists[w].size());
        for (uint64_t v : lists[w]) {
            // componentwise subtraction of the PRC pad
            uint64_t a = v, b = key.pad[w], out = 0, mulq = 1;
            for (uint32_t t = 0; t < params.s; ++t) {
                out += ((a % params.q + params.q - b % params.q) % params.q) * mulq;
                a /= params.q;
                b /= params.q;
                mulq *= params.q;
            }
            rl.lists[w].push_back(out);
        }
    }
    CodeSpec spec = params.code_spec();
    if (params.s == 1) {
        ProbeOptions opts;
        opts.rounds = params.probe_rounds;
        return !list_recover_probe(spec, rl, params.t_rec, opts).codewords.empty();
    }
    return !list_recover_bruteforce(spec, rl, params.t_rec).codewords.empty();
}

}  // namespace

bool wat_detect(const WatermarkKey& key, const BitString& tok, const DetectOptions& opts) {
    const EditParams& params = key.params;
    uint32_t W = params.word_bits();
    uint32_t cb = params.chunk_bits();
    // Chunk-quantized start offsets, nearest first.
    std::vector<int64_t> offsets{0};
    for (uint32_t d = cb; d <= opts.start_band; d += cb) {
        offsets.push_back(static_cast<int64_t>(d));
        offsets.push_back(-static_cast<int64_t>(d));
    }
    for (uint32_t block = 0; block < key.imax(); ++block) {
        int64_t nominal = static_cast<int64_t>(block) * W;
        if (nominal >= static_cast<int64_t>(tok.size())) break;
        for (int64_t d : offsets) {
            int64_t start = nominal + d;
            if (start + cb > static_cast<int64_t>(tok.size())) continue;
            if (padded_window_decode(params, key.prc_key, key.pads[block], tok, start,
                                     opts.slot_band_lo, opts.slot_band_hi))
                return true;
        }
    }
    return false;
}

double empirical_entropy(const TokenSeq& tok, size_t i, size_t j) {
    if (tok.trace.size() != tok.bits.size())
        throw Error("MissingTrace", "token sequence carries no model trace");
    if (i < 1 || j < i || j > tok.bits.size())
        throw Error("BadRange", "need 1 <= i <= j <= |tok|");
    double sum = 0.0;
    for (size_t a = i; a <= j; ++a) {
        double p = tok.trace[a - 1];
        double observed = tok.bits[a - 1] ? p : 1.0 - p;
        sum += -std::log2(observed);
    }
    return sum;
}

double beta_threshold(double alpha, double lambda, double ell) {
    return 8.0 * alpha * ell + 2.0 * std::sqrt(2.0) * lambda;
}

}  // namespace prclab
