#include "prclab/gf.hpp"

namespace prclab {

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

namespace {

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> fs;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

// gamma generates F_q* iff gamma^((q-1)/p) != 1 for every prime p | q-1.
bool is_generator(const FieldCtx& ctx, uint64_t g) {
    if (g == 0) return false;
    uint64_t ord = ctx.q() - 1;
    if (ord == 1) return g == 1;
    for (uint64_t p : prime_factors(ord))
        if (ctx.pow(g, ord / p) == 1) return false;
    return true;
}

}  // namespace

FieldCtx::FieldCtx(uint64_t q, uint64_t gamma_hint) : q_(q), gamma_(0) {
    if (!is_prime_u64(q))
        throw Error("NotPrime", "q = " + std::to_string(q) + " is not prime");
    if (q == 2) {
        if (gamma_hint > 1) throw Error("NotGenerator", "hint out of range for q=2");
        gamma_ = 1;
        return;
    }
    if (gamma_hint != 0) {
        if (gamma_hint >= q || !is_generator(*this, gamma_hint))
            throw Error("NotGenerator",
                        "gamma = " + std::to_string(gamma_hint) + " does not generate F_q*");
        gamma_ = gamma_hint;
        return;
    }
    for (uint64_t g = 2; g < q; ++g) {
        if (is_generator(*this, g)) {
            gamma_ = g;
            return;
        }
    }
    throw Error("NotGenerator", "no generator found (unreachable for prime q)");
}

uint64_t FieldCtx::pow(uint64_t a, uint64_t e) const {
    uint64_t base = a % q_, acc = 1;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

uint64_t FieldCtx::inv(uint64_t a) const {
    a %= q_;
    if (a == 0) throw Error("ZeroInverse", "0 has no multiplicative inverse");
    return pow(a, q_ - 2);
}

size_t matrix_rank(const FqMatrix& m) {
    FqMatrix w = m;
    const FieldCtx& f = w.ctx;
    size_t rank = 0;
    for (size_t col = 0; col < w.cols && rank < w.rows; ++col) {
        size_t pivot = rank;
        while (pivot < w.rows && w.at(pivot, col) == 0) ++pivot;
        if (pivot == w.rows) continue;
        if (pivot != rank)
            for (size_t c = 0; c < w.cols; ++c) std::swap(w.at(pivot, c), w.at(rank, c));
        uint64_t piv_inv = f.inv(w.at(rank, col));
        for (size_t r = rank + 1; r < w.rows; ++r) {
            uint64_t factor = w.at(r, col);
            if (factor == 0) continue;
            uint64_t scale = f.mul(factor, piv_inv);
            for (size_t c = col; c < w.cols; ++c)
                w.at(r, c) = f.sub(w.at(r, c), f.mul(scale, w.at(rank, c)));
        }
        ++rank;
    }
    return rank;
}

}  // namespace prclab
