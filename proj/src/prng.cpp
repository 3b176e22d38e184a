#include "prclab/prng.hpp"

namespace prclab {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

uint64_t sm64_mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

uint64_t Prng::next_u64() {
    ++counter_;
    return sm64_mix(seed_ + counter_ * kGolden);
}

uint64_t Prng::uniform_below(uint64_t bound) {
    if (bound <= 1) return 0;
    // Rejection from the top to keep the draw exactly uniform.
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % bound;
}

double Prng::uniform_real() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool Prng::bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform_real() < p;
}

uint64_t Prng::binomial(uint64_t n, double p) {
    uint64_t count = 0;
    for (uint64_t i = 0; i < n; ++i)
        if (bernoulli(p)) ++count;
    return count;
}

std::vector<uint32_t> Prng::permutation(uint32_t n) {
    std::vector<uint32_t> v(n);
    for (uint32_t i = 0; i < n; ++i) v[i] = i;
    shuffle(v);
    return v;
}

uint64_t Prng::child_seed(uint64_t seed, uint64_t index) {
    return sm64_mix(sm64_mix(seed) ^ (index * kGolden + 0x5851F42D4C957F2Dull));
}

}  // namespace prclab
