#include "prclab/codes.hpp"

#include <cmath>

namespace prclab {

CodeSpec::CodeSpec(FieldCtx c, uint32_t k_, uint32_t s_) : ctx(c), n(0), k(k_), s(s_) {
    n = static_cast<uint32_t>(ctx.q() - 1);
    if (k < 1 || k > n)
        throw Error("BadDimension", "need 1 <= k <= n, got k=" + std::to_string(k));
    if (s < 1 || n % s != 0)
        throw Error("FoldMismatch", "s must divide n = q-1");
}

RSCodeword rs_encode(const CodeSpec& spec, const Message& msg) {
    if (msg.coeffs.size() != spec.k)
        throw Error("LengthMismatch", "message length " + std::to_string(msg.coeffs.size()) +
                                          " != k = " + std::to_string(spec.k));
    const FieldCtx& f = spec.ctx;
    RSCodeword cw{FqVec(f, spec.n)};
    uint64_t x = 1;  // gamma^0
    for (uint32_t j = 0; j < spec.n; ++j) {
        // Horner evaluation at x.
        uint64_t acc = 0;
        for (size_t i = msg.coeffs.size(); i-- > 0;)
            acc = f.add(f.mul(acc, x), msg.coeffs[i]);
        cw.symbols[j] = acc;
        x = f.mul(x, f.gamma());
    }
    return cw;
}

FRSCodeword frs_fold(const CodeSpec& spec, const RSCodeword& cw) {
    if (spec.s < 1 || spec.n % spec.s != 0 || cw.symbols.size() != spec.n)
        throw Error("FoldMismatch", "s must divide n and codeword must have length n");
    FRSCodeword out;
    out.symbols.resize(spec.N());
    for (uint32_t j = 0; j < spec.N(); ++j) {
        out.symbols[j].assign(cw.symbols.elems.begin() + j * spec.s,
                              cw.symbols.elems.begin() + (j + 1) * spec.s);
    }
    return out;
}

Message sample_message(const CodeSpec& spec, Prng& rng) {
    Message m{FqVec(spec.ctx, spec.k)};
    for (uint32_t i = 0; i < spec.k; ++i) m.coeffs[i] = rng.uniform_below(spec.ctx.q());
    return m;
}

RSCodeword sample_codeword(const CodeSpec& spec, Prng& rng) {
    return rs_encode(spec, sample_message(spec, rng));
}

double kwise_uniformity_check(const CodeSpec& spec, const std::set<uint32_t>& positions,
                              uint64_t samples, Prng& rng) {
    if (positions.size() > spec.k)
        throw Error("TooManyPositions", "at most k positions are k-wise uniform");
    if (positions.empty()) return 0.0;
    uint64_t q = spec.ctx.q();
    uint64_t cells = 1;
    for (size_t i = 0; i < positions.size(); ++i) cells *= q;
    std::vector<uint64_t> counts(cells, 0);
    for (uint64_t t = 0; t < samples; ++t) {
        RSCodeword cw = sample_codeword(spec, rng);
        uint64_t idx = 0;
        for (uint32_t pos : positions) idx = idx * q + cw.symbols[pos];
        ++counts[idx];
    }
    double expected = static_cast<double>(samples) / static_cast<double>(cells);
    double stat = 0.0;
    for (uint64_t c : counts) {
        double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    return stat;
}

TrivialCode::TrivialCode(const FieldCtx& ctx, uint32_t n) : ctx_(ctx), n_(n) {}
uint64_t TrivialCode::q() const { return ctx_.q(); }

FqVec TrivialCode::sample(Prng& rng) const {
    FqVec v(ctx_, n_);
    for (uint32_t i = 0; i < n_; ++i) v[i] = rng.uniform_below(ctx_.q());
    return v;
}

std::vector<FqVec> TrivialCode::enumerate() const {
    std::vector<FqVec> all;
    uint64_t q = ctx_.q();
    uint64_t total = 1;
    for (uint32_t i = 0; i < n_; ++i) total *= q;
    all.reserve(total);
    for (uint64_t code = 0; code < total; ++code) {
        FqVec v(ctx_, n_);
        uint64_t rest = code;
        for (uint32_t i = 0; i < n_; ++i) {
            v[i] = rest % q;
            rest /= q;
        }
        all.push_back(std::move(v));
    }
    return all;
}

double TrivialCode::count_log2() const { return n_ * std::log2(static_cast<double>(ctx_.q())); }

ParityCheckCode::ParityCheckCode(const FieldCtx& ctx, uint32_t n) : ctx_(ctx), n_(n) {
    if (n < 1) throw Error("BadDimension", "parity check code needs n >= 1");
}
uint64_t ParityCheckCode::q() const { return ctx_.q(); }

FqVec ParityCheckCode::sample(Prng& rng) const {
    FqVec v(ctx_, n_);
    uint64_t sum = 0;
    for (uint32_t i = 0; i + 1 < n_; ++i) {
        v[i] = rng.uniform_below(ctx_.q());
        sum = ctx_.add(sum, v[i]);
    }
    v[n_ - 1] = ctx_.neg(sum);
    return v;
}

std::vector<FqVec> ParityCheckCode::enumerate() const {
    std::vector<FqVec> all;
    uint64_t q = ctx_.q();
    uint64_t total = 1;
    for (uint32_t i = 0; i + 1 < n_; ++i) total *= q;
    for (uint64_t code = 0; code < total; ++code) {
        FqVec v(ctx_, n_);
        uint64_t rest = code, sum = 0;
        for (uint32_t i = 0; i + 1 < n_; ++i) {
            v[i] = rest % q;
            rest /= q;
            sum = ctx_.add(sum, v[i]);
        }
        v[n_ - 1] = ctx_.neg(sum);
        all.push_back(std::move(v));
    }
    return all;
}

double ParityCheckCode::count_log2() const {
    return (n_ - 1) * std::log2(static_cast<double>(ctx_.q()));
}

std::vector<FqVec> RSCodeModel::enumerate() const {
    const CodeSpec& spec = *spec_;
    uint64_t q = spec.ctx.q();
    uint64_t total = 1;
    for (uint32_t i = 0; i < spec.k; ++i) total *= q;
    std::vector<FqVec> all;
    all.reserve(total);
    for (uint64_t code = 0; code < total; ++code) {
        Message m{FqVec(spec.ctx, spec.k)};
        uint64_t rest = code;
        for (uint32_t i = 0; i < spec.k; ++i) {
            m.coeffs[i] = rest % q;
            rest /= q;
        }
        all.push_back(rs_encode(spec, m).symbols);
    }
    return all;
}

double RSCodeModel::count_log2() const {
    return spec_->k * std::log2(static_cast<double>(spec_->ctx.q()));
}

}  // namespace prclab
