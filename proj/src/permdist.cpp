#include "prclab/permdist.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace prclab {

namespace {

bool is_bijection(const std::vector<uint32_t>& p, size_t size) {
    if (p.size() != size) return false;
    std::vector<bool> seen(size, false);
    for (uint32_t v : p) {
        if (v >= size || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

}  // namespace

PermKey PermKey::from_seed(uint32_t n, uint64_t q, uint64_t seed) {
    PermKey key;
    key.n = n;
    key.q = q;
    key.source_seed = seed;
    Prng rng(seed);
    key.sigma = rng.permutation(n);
    key.pis.resize(n);
    for (uint32_t i = 0; i < n; ++i) key.pis[i] = rng.permutation(static_cast<uint32_t>(q));
    return key;
}

PermKey PermKey::from_arrays(uint32_t n, uint64_t q, std::vector<uint32_t> sigma,
                             std::vector<std::vector<uint32_t>> pis) {
    if (!is_bijection(sigma, n)) throw Error("BadPermutation", "sigma is not a bijection of [n]");
    if (pis.size() != n) throw Error("BadPermutation", "need n alphabet permutations");
    for (const auto& pi : pis)
        if (!is_bijection(pi, q)) throw Error("BadPermutation", "pi_i is not a bijection of [q]");
    PermKey key;
    key.n = n;
    key.q = q;
    key.sigma = std::move(sigma);
    key.pis = std::move(pis);
    return key;
}

uint32_t PermKey::sigma_inv(uint32_t i) const {
    for (uint32_t j = 0; j < n; ++j)
        if (sigma[j] == i) return j;
    throw Error("BadPermutation", "sigma inverse lookup failed");
}

uint64_t PermKey::pi_inv(uint32_t i, uint64_t v) const {
    const auto& pi = pis[i];
    for (uint32_t j = 0; j < pi.size(); ++j)
        if (pi[j] == v) return j;
    throw Error("BadPermutation", "pi inverse lookup failed");
}

FqVec subst_channel(const FieldCtx& ctx, const FqVec& x, double eta, Prng& rng) {
    FqVec out(ctx, x.size());
    for (size_t i = 0; i < x.size(); ++i)
        out[i] = rng.bernoulli(eta) ? rng.uniform_below(ctx.q()) : x[i];
    return out;
}

std::vector<FqVec> sample_permuted_codes(const CodeModel& code, const PermKey& key, double eta,
                                         uint64_t T, Prng& rng) {
    if (key.n != code.n() || key.q != code.q())
        throw Error("DimensionMismatch", "key dimensions do not match the code");
    FieldCtx ctx(code.q());
    std::vector<FqVec> out;
    out.reserve(T);
    for (uint64_t t = 0; t < T; ++t) {
        FqVec c = code.sample(rng);
        FqVec hat(ctx, key.n);
        for (uint32_t i = 0; i < key.n; ++i) hat[i] = key.pis[i][c[key.sigma[i]]];
        out.push_back(subst_channel(ctx, hat, eta, rng));
    }
    return out;
}

std::vector<FqVec> sample_no_alphabet_perm(const CodeModel& code,
                                           const std::vector<uint32_t>& sigma, double eta,
                                           uint64_t T, Prng& rng) {
    FieldCtx ctx(code.q());
    std::vector<FqVec> out;
    out.reserve(T);
    for (uint64_t t = 0; t < T; ++t) {
        FqVec c = code.sample(rng);
        FqVec hat(ctx, code.n());
        for (uint32_t i = 0; i < code.n(); ++i) hat[i] = c[sigma[i]];
        out.push_back(subst_channel(ctx, hat, eta, rng));
    }
    return out;
}

std::vector<uint32_t> random_global_perm(uint32_t n, uint64_t q, Prng& rng) {
    return rng.permutation(n * static_cast<uint32_t>(q));
}

std::vector<PuzzleSample> sample_permuted_puzzles(const CodeModel& code,
                                                  const std::vector<uint32_t>& pi_global,
                                                  uint64_t T, uint32_t m, Prng& rng) {
    if (m > code.n()) throw Error("DimensionMismatch", "m must be at most n");
    uint64_t q = code.q();
    std::vector<PuzzleSample> out;
    out.reserve(T);
    for (uint64_t t = 0; t < T; ++t) {
        FqVec c = code.sample(rng);
        PuzzleSample s;
        s.tuples.resize(m);
        for (uint32_t j = 0; j < m; ++j) {
            uint32_t i = static_cast<uint32_t>(rng.uniform_below(code.n()));
            s.tuples[j] = pi_global[i * q + c[i]];
        }
        out.push_back(std::move(s));
    }
    return out;
}

ConvertResult puzzles_to_codes_convert(const std::vector<PuzzleSample>& samples, uint32_t n,
                                       const FieldCtx& ctx, double eta, Prng& rng) {
    uint64_t q = ctx.q();
    uint32_t total = n * static_cast<uint32_t>(q);
    // Co-occurrence of symbol pairs across all samples.
    std::vector<bool> co(static_cast<size_t>(total) * total, false);
    for (const auto& s : samples) {
        for (size_t a = 0; a < s.tuples.size(); ++a) {
            for (size_t b = a + 1; b < s.tuples.size(); ++b) {
                uint32_t x = s.tuples[a], y = s.tuples[b];
                if (x == y) continue;
                co[static_cast<size_t>(x) * total + y] = true;
                co[static_cast<size_t>(y) * total + x] = true;
            }
        }
    }
    // Sequential set construction by the never-co-occur rule.
    std::vector<std::vector<uint32_t>> classes(n);
    std::vector<bool> assigned(total, false);
    for (uint32_t l = 0; l < n; ++l) {
        for (uint32_t alpha = 0; alpha < total; ++alpha) {
            if (assigned[alpha]) continue;
            if (classes[l].empty()) {
                classes[l].push_back(alpha);
                assigned[alpha] = true;
                continue;
            }
            bool clash = false;
            for (uint32_t beta : classes[l])
                if (co[static_cast<size_t>(alpha) * total + beta]) {
                    clash = true;
                    break;
                }
            if (!clash) {
                classes[l].push_back(alpha);
                assigned[alpha] = true;
            }
        }
    }
    for (const auto& cls : classes)
        if (cls.size() != q)
            throw Error("PartitionInconsistent",
                        "a recovered class has size " + std::to_string(cls.size()) +
                            " != q; draw more samples");

    // Index relabeling and per-class alphabet bijections.
    std::vector<uint32_t> pi_adv = rng.permutation(n);
    std::vector<uint32_t> class_of(total);
    std::vector<uint64_t> value_of(total);
    for (uint32_t l = 0; l < n; ++l) {
        std::vector<uint32_t> perm = rng.permutation(static_cast<uint32_t>(q));
        for (size_t idx = 0; idx < classes[l].size(); ++idx) {
            class_of[classes[l][idx]] = pi_adv[l];
            value_of[classes[l][idx]] = perm[idx];
        }
    }

    ConvertResult result;
    result.classes = classes;
    result.samples.reserve(samples.size());
    for (const auto& s : samples) {
        FqVec hat(ctx, n);
        for (uint32_t i = 0; i < n; ++i) hat[i] = rng.uniform_below(q);
        uint64_t k = rng.binomial(n, 1.0 - eta);
        std::vector<uint32_t> covered;
        {
            std::vector<bool> seen(n, false);
            for (uint32_t t : s.tuples) {
                uint32_t l = class_of[t];
                if (!seen[l]) {
                    seen[l] = true;
                    covered.push_back(l);
                }
            }
        }
        if (covered.size() < k) {
            result.samples.push_back(std::nullopt);
            continue;
        }
        rng.shuffle(covered);
        std::vector<bool> chosen(n, false);
        for (uint64_t idx = 0; idx < k; ++idx) chosen[covered[idx]] = true;
        for (uint32_t t : s.tuples) {
            uint32_t l = class_of[t];
            if (chosen[l]) hat[l] = value_of[t];
        }
        result.samples.push_back(std::move(hat));
    }
    return result;
}

double exact_tv_tiny(const CodeModel& code, const FieldCtx& ctx, double eta, uint64_t T) {
    uint32_t n = code.n();
    uint64_t q = ctx.q();
    // Enumeration cost in bits: n! * (q!)^n keys, |C|^T codewords, q^(nT) outputs.
    double log_cost = std::lgamma(n + 1.0) / std::log(2.0) +
                      n * std::lgamma(static_cast<double>(q) + 1.0) / std::log(2.0) +
                      T * code.count_log2() + n * T * std::log2(static_cast<double>(q));
    if (log_cost > 27.0)
        throw Error("TooLargeToEnumerate", "instance too large for exact TV enumeration");

    std::vector<FqVec> codewords = code.enumerate();
    uint64_t out_space = 1;
    for (uint64_t i = 0; i < n * T; ++i) out_space *= q;

    std::vector<std::vector<uint32_t>> sigmas;
    {
        std::vector<uint32_t> perm(n);
        for (uint32_t i = 0; i < n; ++i) perm[i] = i;
        do {
            sigmas.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    std::vector<std::vector<uint32_t>> qperms;
    {
        std::vector<uint32_t> perm(q);
        for (uint32_t i = 0; i < q; ++i) perm[i] = i;
        do {
            qperms.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    double p_keep = 1.0 - eta + eta / static_cast<double>(q);
    double p_other = eta / static_cast<double>(q);

    std::vector<double> mass(out_space, 0.0);
    std::vector<double> kahan(out_space, 0.0);
    size_t n_qperm_tuples = 1;
    for (uint32_t i = 0; i < n; ++i) n_qperm_tuples *= qperms.size();
    double key_weight =
        1.0 / (static_cast<double>(sigmas.size()) * static_cast<double>(n_qperm_tuples) *
               std::pow(static_cast<double>(codewords.size()), static_cast<double>(T)));

    std::vector<size_t> pi_idx(n, 0);
    std::vector<size_t> cw_idx(T, 0);
    for (const auto& sigma : sigmas) {
        std::fill(pi_idx.begin(), pi_idx.end(), 0);
        while (true) {
            std::fill(cw_idx.begin(), cw_idx.end(), 0);
            while (true) {
                for (uint64_t x = 0; x < out_space; ++x) {
                    double p = key_weight;
                    uint64_t rest = x;
                    for (uint64_t t = 0; t < T; ++t) {
                        const FqVec& c = codewords[cw_idx[t]];
                        for (uint32_t i = 0; i < n; ++i) {
                            uint64_t sym = rest % q;
                            rest /= q;
                            uint64_t clean = qperms[pi_idx[i]][c[sigma[i]]];
                            p *= (sym == clean) ? p_keep : p_other;
                        }
                    }
                    double y = p - kahan[x];
                    double s = mass[x] + y;
                    kahan[x] = (s - mass[x]) - y;
                    mass[x] = s;
                }
                size_t t = 0;
                while (t < T && ++cw_idx[t] == codewords.size()) cw_idx[t++] = 0;
                if (t == T) break;
            }
            size_t i = 0;
            while (i < n && ++pi_idx[i] == qperms.size()) pi_idx[i++] = 0;
            if (i == n) break;
        }
    }

    double uniform = 1.0 / static_cast<double>(out_space);
    double total_mass = 0.0;
    double tv = 0.0;
    for (double m : mass) {
        tv += std::fabs(m - uniform);
        total_mass += m;
    }
    if (std::fabs(total_mass - 1.0) > 1e-9)
        throw Error("MassMismatch", "probability mass drifted beyond 1e-9");
    return tv / 2.0;
}

uint32_t dual_distance_tiny(const CodeModel& code, const FieldCtx& ctx) {
    uint32_t n = code.n();
    uint64_t q = ctx.q();
    double log_cost = n * std::log2(static_cast<double>(q)) + code.count_log2();
    if (log_cost > 26.0) throw Error("TooLargeToEnumerate", "dual enumeration too large");
    std::vector<FqVec> codewords = code.enumerate();
    uint64_t space = 1;
    for (uint32_t i = 0; i < n; ++i) space *= q;
    uint32_t best = n + 1;
    for (uint64_t v = 1; v < space; ++v) {
        FqVec dual(ctx, n);
        uint64_t rest = v;
        uint32_t weight = 0;
        for (uint32_t i = 0; i < n; ++i) {
            dual[i] = rest % q;
            rest /= q;
            if (dual[i]) ++weight;
        }
        bool orthogonal = true;
        for (const auto& c : codewords) {
            uint64_t dot = 0;
            for (uint32_t i = 0; i < n; ++i) dot = ctx.add(dot, ctx.mul(dual[i], c[i]));
            if (dot != 0) {
                orthogonal = false;
                break;
            }
        }
        if (orthogonal && weight < best) best = weight;
    }
    return best;  // n+1 means the dual is trivial
}

std::string dump_samples(const std::vector<FqVec>& samples, uint64_t q, double eta) {
    std::ostringstream out;
    uint32_t n = samples.empty() ? 0 : static_cast<uint32_t>(samples[0].size());
    out << "# permdist v1 n=" << n << " q=" << q << " T=" << samples.size() << " eta=" << eta
        << "\n";
    for (const auto& s : samples) {
        for (size_t i = 0; i < s.size(); ++i) {
            if (i) out << ' ';
            out << s[i];
        }
        out << "\n";
    }
    return out.str();
}

std::vector<FqVec> parse_samples(const FieldCtx& ctx, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<FqVec> out;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::vector<uint64_t> vals;
        uint64_t v;
        while (ls >> v) vals.push_back(v % ctx.q());
        if (!vals.empty()) out.push_back(FqVec(ctx, std::move(vals)));
    }
    return out;
}

}  // namespace prclab
