#pragma once

#include <cstdint>
#include <vector>

#include "prclab/error.hpp"

namespace prclab {

// Arithmetic context for a prime field F_q with a designated generator of
// the multiplicative group. Immutable after construction; all member
// functions are pure, so a single context can be shared across threads.
//
// Residues are stored as 64-bit integers with a 128-bit intermediate in
// multiplication; q is assumed < 2^31.
class FieldCtx {
public:
    // Verifies primality of q and the order of the generator. If gamma_hint
    // is 0 the smallest generator is found by exhaustive order check.
    // Throws NotPrime / NotGenerator.
    explicit FieldCtx(uint64_t q, uint64_t gamma_hint = 0);

    // F_2, the smallest valid context.
    FieldCtx() : q_(2), gamma_(1) {}

    uint64_t q() const { return q_; }
    uint64_t gamma() const { return gamma_; }

    uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % q_; }
    uint64_t sub(uint64_t a, uint64_t b) const { return (a + q_ - b % q_) % q_; }
    uint64_t neg(uint64_t a) const { return (q_ - a % q_) % q_; }
    uint64_t mul(uint64_t a, uint64_t b) const {
        return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % q_);
    }
    uint64_t pow(uint64_t a, uint64_t e) const;

    // Multiplicative inverse; throws ZeroInverse on a = 0.
    uint64_t inv(uint64_t a) const;

    bool operator==(const FieldCtx& o) const { return q_ == o.q_ && gamma_ == o.gamma_; }

private:
    uint64_t q_;
    uint64_t gamma_;
};

bool is_prime_u64(uint64_t n);

// Vector over F_q. Elements are residues in [0, q).
struct FqVec {
    FieldCtx ctx;
    std::vector<uint64_t> elems;

    FqVec() = default;
    FqVec(const FieldCtx& c, size_t n) : ctx(c), elems(n, 0) {}
    FqVec(const FieldCtx& c, std::vector<uint64_t> e) : ctx(c), elems(std::move(e)) {}

    size_t size() const { return elems.size(); }
    uint64_t& operator[](size_t i) { return elems[i]; }
    uint64_t operator[](size_t i) const { return elems[i]; }
    bool operator==(const FqVec& o) const { return elems == o.elems; }
};

// Row-major matrix over F_q.
struct FqMatrix {
    FieldCtx ctx;
    size_t rows = 0, cols = 0;
    std::vector<uint64_t> data;

    FqMatrix() = default;
    FqMatrix(const FieldCtx& c, size_t r, size_t n) : ctx(c), rows(r), cols(n), data(r * n, 0) {}

    uint64_t& at(size_t r, size_t c) { return data[r * cols + c]; }
    uint64_t at(size_t r, size_t c) const { return data[r * cols + c]; }
};

// Rank over F_q by Gaussian elimination on a working copy.
size_t matrix_rank(const FqMatrix& m);

}  // namespace prclab
