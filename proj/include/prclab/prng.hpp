#pragma once

#include <cstdint>
#include <vector>

namespace prclab {

// sm64ctr: counter-mode generator over the splitmix64 finalizer.
// Output block i is mix(seed + i * GOLDEN). Fully portable: every draw is a
// pure function of (seed, counter), so streams replay bit-identically on any
// platform and child streams can be split without overlap.
class Prng {
public:
    explicit Prng(uint64_t seed) : seed_(seed), counter_(0) {}

    uint64_t next_u64();

    // Unbiased draw in [0, bound) by rejection.
    uint64_t uniform_below(uint64_t bound);

    // True with probability p.
    bool bernoulli(double p);

    // Uniform double in [0, 1).
    double uniform_real();

    // Sum of n independent Bernoulli(p) trials. Fine at desk scale.
    uint64_t binomial(uint64_t n, double p);

    // Fisher-Yates, in place.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(uniform_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Random permutation of [0, n).
    std::vector<uint32_t> permutation(uint32_t n);

    uint64_t seed() const { return seed_; }

    // Independent child stream for (seed, index), used to fan out trials
    // across workers deterministically.
    static uint64_t child_seed(uint64_t seed, uint64_t index);

private:
    uint64_t seed_;
    uint64_t counter_;
};

}  // namespace prclab
