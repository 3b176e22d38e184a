#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <vector>

#include "prclab/gf.hpp"
#include "prclab/prng.hpp"

namespace prclab {

// Parameters selecting a Reed-Solomon or folded Reed-Solomon code.
// Evaluation points are all of F_q* in generator-power order
// gamma^0, gamma^1, ..., gamma^(n-1), so n = q - 1 always.
// Messages are polynomials of degree <= k-1 (dimension k).
// s = 1 means plain RS; s >= 2 folds s consecutive evaluations into one
// symbol of the length-N = n/s folded code.
struct CodeSpec {
    FieldCtx ctx;
    uint32_t n;
    uint32_t k;
    uint32_t s;

    CodeSpec(FieldCtx c, uint32_t k_, uint32_t s_ = 1);

    uint32_t N() const { return n / s; }
    // Evaluation point of RS position j.
    uint64_t point(uint32_t j) const { return ctx.pow(ctx.gamma(), j); }
};

struct Message {
    FqVec coeffs;  // low degree first, length exactly k
};

struct RSCodeword {
    FqVec symbols;  // length n, symbol j = p(gamma^j)
};

// Folded codeword: N tuples of s consecutive RS symbols each.
struct FRSCodeword {
    std::vector<std::vector<uint64_t>> symbols;
};

RSCodeword rs_encode(const CodeSpec& spec, const Message& msg);
FRSCodeword frs_fold(const CodeSpec& spec, const RSCodeword& cw);

// Uniform codeword: uniform message, then encode.
RSCodeword sample_codeword(const CodeSpec& spec, Prng& rng);
Message sample_message(const CodeSpec& spec, Prng& rng);

// Chi-square statistic of the empirical joint distribution of the given
// coordinate set of sampled codewords against uniform over q^|positions|.
// Any k coordinates of a uniform RS codeword are exactly uniform (dual
// distance k+1), so the statistic should sit below the chi-square quantile
// for q^|positions| - 1 degrees of freedom.
double kwise_uniformity_check(const CodeSpec& spec, const std::set<uint32_t>& positions,
                              uint64_t samples, Prng& rng);

// Sampling interface for the permuted-code distributions: they are defined
// for an arbitrary set C inside F_q^n, not just RS codes. Tiny codes can
// additionally enumerate themselves (for the exact-TV check) and report
// their dual distance.
class CodeModel {
public:
    virtual ~CodeModel() = default;
    virtual uint32_t n() const = 0;
    virtual uint64_t q() const = 0;
    virtual FqVec sample(Prng& rng) const = 0;
    // All codewords; only call when count() is tiny.
    virtual std::vector<FqVec> enumerate() const = 0;
    virtual double count_log2() const = 0;
};

// C = F_q^n.
class TrivialCode : public CodeModel {
public:
    TrivialCode(const FieldCtx& ctx, uint32_t n);
    uint32_t n() const override { return n_; }
    uint64_t q() const override;
    FqVec sample(Prng& rng) const override;
    std::vector<FqVec> enumerate() const override;
    double count_log2() const override;

private:
    FieldCtx ctx_;
    uint32_t n_;
};

// Single parity check code {c : sum c_i = 0}; over F_2 this is the
// even-weight code. Dual is the repetition code, so dual distance is n.
class ParityCheckCode : public CodeModel {
public:
    ParityCheckCode(const FieldCtx& ctx, uint32_t n);
    uint32_t n() const override { return n_; }
    uint64_t q() const override;
    FqVec sample(Prng& rng) const override;
    std::vector<FqVec> enumerate() const override;
    double count_log2() const override;

private:
    FieldCtx ctx_;
    uint32_t n_;
};

// Reed-Solomon code viewed through the CodeModel interface.
class RSCodeModel : public CodeModel {
public:
    explicit RSCodeModel(const CodeSpec& spec) : spec_(&spec) {}
    uint32_t n() const override { return spec_->n; }
    uint64_t q() const override { return spec_->ctx.q(); }
    FqVec sample(Prng& rng) const override { return sample_codeword(*spec_, rng).symbols; }
    std::vector<FqVec> enumerate() const override;
    double count_log2() const override;

private:
    const CodeSpec* spec_;
};

}  // namespace prclab
