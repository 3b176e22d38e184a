#include "prclab/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "prclab/permdist.hpp"

namespace prclab {

namespace {

uint64_t binom_u64(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (uint64_t i = 0; i < k; ++i) {
        acc = acc * (n - i) / (i + 1);
        if (acc > (static_cast<unsigned __int128>(1) << 100)) return UINT64_MAX;
    }
    return static_cast<uint64_t>(acc);
}

}  // namespace

FqMatrix power_matrix(const FqMatrix& x, uint32_t r) {
    uint64_t row_count = binom_u64(r + x.rows, r);
    if (row_count > 100000)
        throw Error("TooManyMonomials", "C(r+T, r) exceeds the 1e5 guard");
    const FieldCtx& f = x.ctx;
    FqMatrix out(f, static_cast<size_t>(row_count), x.cols);
    // Enumerate multisets of row indices of size <= r as nondecreasing
    // sequences; the empty product is the all-ones row.
    std::vector<uint32_t> multiset;
    size_t row = 0;
    auto emit = [&]() {
        for (size_t c = 0; c < x.cols; ++c) {
            uint64_t prod = 1;
            for (uint32_t ri : multiset) prod = f.mul(prod, x.at(ri, c));
            out.at(row, c) = prod;
        }
        ++row;
    };
    // iterative multiset enumeration by degree
    std::vector<std::vector<uint32_t>> frontier{{}};
    emit();
    for (uint32_t deg = 1; deg <= r; ++deg) {
        std::vector<std::vector<uint32_t>> next;
        for (const auto& ms : frontier) {
            uint32_t lo = ms.empty() ? 0 : ms.back();
            for (uint32_t i = lo; i < x.rows; ++i) {
                auto ext = ms;
                ext.push_back(i);
                multiset = ext;
                emit();
                next.push_back(std::move(ext));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

RankAttackReport rank_attack(const CodeSpec& spec, double eta, uint32_t T, uint32_t r,
                             size_t threshold, uint32_t trials, RankAttackMode mode,
                             uint64_t seed, uint32_t jobs) {
    const FieldCtx& f = spec.ctx;
    uint32_t n = spec.n;
    RankAttackReport report;
    report.threshold = threshold;
    report.trials = trials;
    report.structured_ranks.resize(trials);
    report.uniform_ranks.resize(trials);
    report.structured_noisy_cols.resize(trials);
    report.rs_side_bound = n - n * std::pow(1.0 - eta, T) +
                           static_cast<double>(spec.k) * r + 1.0;
    report.uniform_side_bound =
        n * (1.0 - std::log(static_cast<double>(r)) / std::log(static_cast<double>(f.q()))) -
        1.0 / std::log(static_cast<double>(f.q()));

    auto run_trial = [&](uint32_t trial) {
        Prng rng(Prng::child_seed(seed, trial));
        // Structured side: fresh key, T samples, tracking channel errors.
        std::vector<uint32_t> sigma = rng.permutation(n);
        std::vector<std::vector<uint32_t>> pis;
        if (mode == RankAttackMode::FullPermuted) {
            pis.resize(n);
            for (uint32_t i = 0; i < n; ++i)
                pis[i] = rng.permutation(static_cast<uint32_t>(f.q()));
        }
        FqMatrix X(f, T, n);
        std::vector<bool> col_noisy(n, false);
        for (uint32_t t = 0; t < T; ++t) {
            RSCodeword c = sample_codeword(spec, rng);
            for (uint32_t i = 0; i < n; ++i) {
                uint64_t clean = c.symbols[sigma[i]];
                if (mode == RankAttackMode::FullPermuted) clean = pis[i][clean];
                uint64_t sym = clean;
                if (rng.bernoulli(eta)) sym = rng.uniform_below(f.q());
                if (sym != clean) col_noisy[i] = true;
                X.at(t, i) = sym;
            }
        }
        report.structured_ranks[trial] = matrix_rank(power_matrix(X, r));
        report.structured_noisy_cols[trial] =
            static_cast<size_t>(std::count(col_noisy.begin(), col_noisy.end(), true));

        FqMatrix U(f, T, n);
        for (auto& v : U.data) v = rng.uniform_below(f.q());
        report.uniform_ranks[trial] = matrix_rank(power_matrix(U, r));
    };

    if (jobs <= 1) {
        for (uint32_t t = 0; t < trials; ++t) run_trial(t);
    } else {
        std::vector<std::thread> workers;
        std::atomic<uint32_t> next{0};
        for (uint32_t w = 0; w < jobs; ++w)
            workers.emplace_back([&]() {
                for (uint32_t t = next.fetch_add(1); t < trials; t = next.fetch_add(1))
                    run_trial(t);
            });
        for (auto& th : workers) th.join();
    }

    size_t accept_structured = 0, accept_uniform = 0;
    report.per_trial_inequality_held = true;
    for (uint32_t t = 0; t < trials; ++t) {
        if (report.structured_ranks[t] <= threshold) ++accept_structured;
        if (report.uniform_ranks[t] <= threshold) ++accept_uniform;
        if (mode == RankAttackMode::NoAlphabetPerm &&
            report.structured_ranks[t] >
                report.structured_noisy_cols[t] + static_cast<size_t>(spec.k) * r + 1)
            report.per_trial_inequality_held = false;
    }
    report.advantage = std::fabs(static_cast<double>(accept_structured) -
                                 static_cast<double>(accept_uniform)) /
                       static_cast<double>(trials);
    return report;
}

namespace {

uint8_t eval_predicate(const PlantedPredicateSpec& pp, const BitString& x) {
    switch (pp.kind) {
        case PredicateKind::ParitySubset: {
            uint8_t acc = 0;
            for (uint32_t i : pp.subset) acc ^= x[i];
            return acc;
        }
        case PredicateKind::Majority: {
            uint32_t ones = 0;
            for (uint32_t i : pp.subset) ones += x[i];
            return ones * 2 > pp.subset.size() ? 1 : 0;
        }
        case PredicateKind::Dictator:
            return x[pp.subset.at(0)];
    }
    return 0;
}

}  // namespace

std::vector<BitString> planted_sample(const PlantedPredicateSpec& pp, uint32_t count,
                                      Prng& rng) {
    if (pp.ell + 1 > pp.n) throw Error("BadDimension", "need n >= ell + 1");
    if (pp.sigma_embed.size() != pp.n)
        throw Error("BadPermutation", "sigma_embed must be a permutation of [n]");
    std::vector<BitString> out;
    out.reserve(count);
    for (uint32_t c = 0; c < count; ++c) {
        BitString base(pp.n);
        BitString x(pp.ell);
        for (auto& b : x) b = static_cast<uint8_t>(rng.uniform_below(2));
        for (uint32_t i = 0; i < pp.ell; ++i) base[i] = x[i];
        base[pp.ell] = eval_predicate(pp, x);
        for (uint32_t i = pp.ell + 1; i < pp.n; ++i)
            base[i] = static_cast<uint8_t>(rng.uniform_below(2));
        BitString cw(pp.n);
        for (uint32_t i = 0; i < pp.n; ++i) cw[i] = base[pp.sigma_embed[i]];
        out.push_back(std::move(cw));
    }
    return out;
}

FourierScan fourier_attack(const std::vector<BitString>& samples, uint32_t t,
                           double threshold) {
    if (samples.empty()) throw Error("BadDimension", "need at least one sample");
    uint32_t n = static_cast<uint32_t>(samples[0].size());
    if (n > 64 || t > 2) throw Error("TooManyCoefficients", "guard: n <= 64 and t <= 2");

    // +-1 encoding, one int8 per bit.
    std::vector<std::vector<int8_t>> enc(samples.size(), std::vector<int8_t>(n));
    for (size_t s = 0; s < samples.size(); ++s)
        for (uint32_t i = 0; i < n; ++i) enc[s][i] = samples[s][i] ? -1 : 1;

    FourierScan scan;
    scan.threshold = threshold;
    double inv = 1.0 / static_cast<double>(samples.size());

    auto consider = [&](const std::vector<uint32_t>& set, uint32_t i, double est) {
        ++scan.coefficients;
        if (std::fabs(est) > std::fabs(scan.max_abs)) {
            scan.max_abs = std::fabs(est);
            scan.best_set = set;
            scan.best_i = i;
        }
    };

    // |S| = 0: plain first moments.
    for (uint32_t i = 0; i < n; ++i) {
        int64_t sum = 0;
        for (const auto& row : enc) sum += row[i];
        consider({}, i, sum * inv);
    }
    if (t >= 1) {
        for (uint32_t a = 0; a < n; ++a) {
            for (uint32_t i = 0; i < n; ++i) {
                if (i == a) continue;
                int64_t sum = 0;
                for (const auto& row : enc) sum += row[a] * row[i];
                consider({a}, i, sum * inv);
            }
        }
    }
    if (t >= 2) {
        for (uint32_t a = 0; a < n; ++a) {
            for (uint32_t b = a + 1; b < n; ++b) {
                // precompute the pair product once per sample
                std::vector<int8_t> ab(samples.size());
                for (size_t s = 0; s < samples.size(); ++s) ab[s] = enc[s][a] * enc[s][b];
                for (uint32_t i = 0; i < n; ++i) {
                    if (i == a || i == b) continue;
                    int64_t sum = 0;
                    for (size_t s = 0; s < samples.size(); ++s) sum += ab[s] * enc[s][i];
                    consider({a, b}, i, sum * inv);
                }
            }
        }
    }
    scan.accept = scan.max_abs > threshold;
    return scan;
}

double fourier_default_threshold(size_t count, double planted_weight) {
    return 4.0 / std::sqrt(static_cast<double>(count)) + planted_weight / 2.0;
}

}  // namespace prclab
