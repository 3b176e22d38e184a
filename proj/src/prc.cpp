#include "prclab/prc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace prclab {

namespace {

uint64_t id_add(uint64_t q, uint32_t s, uint64_t a, uint64_t b) {
    uint64_t out = 0, mul = 1;
    for (uint32_t t = 0; t < s; ++t) {
        out += ((a % q + b % q) % q) * mul;
        a /= q;
        b /= q;
        mul *= q;
    }
    return out;
}

uint64_t id_sub(uint64_t q, uint32_t s, uint64_t a, uint64_t b) {
    uint64_t out = 0, mul = 1;
    for (uint32_t t = 0; t < s; ++t) {
        out += ((a % q + q - b % q) % q) * mul;
        a /= q;
        b /= q;
        mul *= q;
    }
    return out;
}

uint32_t bit_width_of(uint64_t v) {
    uint32_t bits = 0;
    while ((1ull << bits) < v) ++bits;
    return bits == 0 ? 1 : bits;
}

void append_bits(BitString& out, uint64_t value, uint32_t width) {
    for (uint32_t b = width; b-- > 0;) out.push_back((value >> b) & 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// Substitution-robust PRC.
// ---------------------------------------------------------------------------

namespace {

SubstSecretKey subst_key_from_stream(const CodeSpec& spec, uint64_t seed) {
    Prng r(seed);
    SubstSecretKey key;
    key.perm.n = spec.n;
    key.perm.q = spec.ctx.q();
    key.perm.source_seed = seed;
    key.perm.sigma = r.permutation(spec.n);
    key.perm.pis.resize(spec.n);
    for (uint32_t i = 0; i < spec.n; ++i)
        key.perm.pis[i] = r.permutation(static_cast<uint32_t>(spec.ctx.q()));
    key.pad = FqVec(spec.ctx, spec.n);
    for (uint32_t i = 0; i < spec.n; ++i) key.pad[i] = r.uniform_below(spec.ctx.q());
    return key;
}

}  // namespace

SubstSecretKey subst_keygen(const CodeSpec& spec, Prng& rng) {
    return subst_key_from_stream(spec, rng.next_u64());
}

SubstEncodeTrace subst_encode_traced(const CodeSpec& spec, const SubstSecretKey& key,
                                     double delta, Prng& rng, double eta_enc) {
    uint32_t radius = (spec.n - spec.k) / 2;
    if (static_cast<uint32_t>(delta * spec.n) > radius)
        throw Error("DeltaTooLarge", "floor(delta n) exceeds the unique-decoding radius");
    if (eta_enc < 0) eta_enc = delta / 3.0;
    const FieldCtx& f = spec.ctx;
    RSCodeword c = sample_codeword(spec, rng);
    SubstEncodeTrace trace;
    trace.word = FqVec(f, spec.n);
    trace.clean.assign(spec.n, true);
    for (uint32_t i = 0; i < spec.n; ++i) {
        uint64_t hat = key.perm.pis[i][c.symbols[key.perm.sigma[i]]];
        uint64_t noisy = hat;
        if (rng.bernoulli(eta_enc)) noisy = rng.uniform_below(f.q());
        if (noisy != hat) trace.clean[i] = false;
        trace.word[i] = f.add(noisy, key.pad[i]);
    }
    return trace;
}

FqVec subst_encode(const CodeSpec& spec, const SubstSecretKey& key, double delta, Prng& rng,
                   double eta_enc) {
    return subst_encode_traced(spec, key, delta, rng, eta_enc).word;
}

bool subst_decode(const CodeSpec& spec, const SubstSecretKey& key, const FqVec& y,
                  double delta) {
    if (y.size() != spec.n) throw Error("LengthMismatch", "word must have length n");
    const FieldCtx& f = spec.ctx;
    FqVec unpermuted(f, spec.n);
    for (uint32_t i = 0; i < spec.n; ++i) {
        uint64_t stripped = f.sub(y[i], key.pad[i]);
        unpermuted[key.perm.sigma[i]] = key.perm.pi_inv(i, stripped);
    }
    uint32_t budget = static_cast<uint32_t>(delta * spec.n);
    return unique_decode(spec, unpermuted, budget).has_value();
}

FqVec subst_worstcase_channel(const CodeSpec& spec, const SubstEncodeTrace& trace,
                              uint32_t budget, Prng& rng) {
    const FieldCtx& f = spec.ctx;
    FqVec out = trace.word;
    uint32_t used = 0;
    for (uint32_t i = 0; i < spec.n && used < budget; ++i) {
        if (!trace.clean[i]) continue;
        // Guaranteed-fresh error: shift by a nonzero amount.
        out[i] = f.add(out[i], 1 + rng.uniform_below(f.q() - 1));
        ++used;
    }
    return out;
}

bool subst_budgets_feasible(const CodeSpec& spec, double eta_enc, double channel_frac) {
    double n = spec.n;
    double eta_eff = eta_enc * (1.0 - 1.0 / static_cast<double>(spec.ctx.q()));
    double mean = eta_eff * n;
    double sd = std::sqrt(n * eta_eff * (1.0 - eta_eff));
    double radius = std::floor((spec.n - spec.k) / 2.0);
    return mean + 3.0 * sd + std::floor(channel_frac * n) <= radius;
}

// ---------------------------------------------------------------------------
// Edit-robust PRC.
// ---------------------------------------------------------------------------

uint32_t EditParams::index_bits() const { return bit_width_of(positions()); }
uint32_t EditParams::value_bits() const { return s * bit_width_of(q); }

uint32_t EditParams::window_ham_budget() const {
    double b = (0.5 - p_dec) * chunk_bits();
    return b <= 0 ? 0 : static_cast<uint32_t>(b);
}

uint32_t EditParams::window_edit_budget() const {
    return static_cast<uint32_t>(eps_dec * chunk_bits());
}

uint64_t EditParams::symbol_space() const {
    uint64_t r = 1;
    for (uint32_t t = 0; t < s; ++t) r *= q;
    return r;
}

CodeSpec EditParams::code_spec() const { return CodeSpec(FieldCtx(q), k, s); }

EditParams EditParams::edit_paper(uint64_t q, double eps_edit) {
    EditParams p;
    p.name = "edit-paper";
    p.q = q;
    p.n = static_cast<uint32_t>(q - 1);
    double n = p.n;
    p.k = static_cast<uint32_t>(std::ceil(std::pow(n, 0.2)));
    p.s = 1;
    p.m = static_cast<uint32_t>(std::ceil(4.0 * std::pow(n, 0.8)));
    p.c_dec = 16.0;
    p.eta = 1.0 / 32;
    p.l_max = static_cast<uint32_t>(std::ceil(std::pow(n, 0.4)));
    p.p_dec = 0.5;
    p.eps_edit = eps_edit;
    p.eps_dec = 2.0 * eps_edit * p.c_dec;
    p.t_rec = static_cast<uint32_t>(
        std::ceil(std::sqrt(static_cast<double>(p.k) * p.l_max * n)));
    return p;
}

EditParams EditParams::edit_desk() {
    EditParams p;
    p.name = "edit-desk";
    p.q = 127;
    p.n = 126;
    p.k = 4;
    p.s = 1;
    p.m = 200;
    p.c_dec = 16.0;
    p.eta = 1.0 / 32;
    p.l_max = 32;
    p.p_dec = 0.5;
    p.eps_dec = 1.0 / 32;  // window edit budget floor(14/32) = 0: exact-match scan
    p.eps_edit = 0.02;
    p.t_rec = 55;
    p.probe_rounds = 150;
    return p;
}

EditParams EditParams::hamedit_desk() {
    EditParams p;
    p.name = "hamedit-desk";
    p.q = 127;
    p.n = 126;
    p.k = 3;
    p.s = 2;
    p.m = 120;
    p.c_dec = 32.0;
    p.eta = 1.0 / 64;
    p.l_max = 1024;
    p.p_dec = 0.45;  // window Hamming budget floor(0.05 * 20) = 1 bit
    p.eps_dec = 0.0;
    p.eps_edit = 0.01;
    p.p_ham_channel = 0.05;
    p.t_rec = 25;
    return p;
}

EditParams EditParams::by_name(const std::string& name) {
    if (name == "edit-desk") return edit_desk();
    if (name == "hamedit-desk") return hamedit_desk();
    if (name == "edit-paper") return edit_paper(127, 1.0 / 400);
    throw Error("UnknownPreset", "no preset named " + name);
}

EditSecretKey edit_keygen_from_seed(const EditParams& params, uint64_t seed) {
    Prng r(seed);
    uint32_t N = params.positions();
    uint64_t R = params.symbol_space();
    EditSecretKey key;
    key.perm.n = N;
    key.perm.q = R;
    key.perm.source_seed = seed;
    key.perm.sigma = r.permutation(N);
    key.perm.pis.resize(N);
    for (uint32_t i = 0; i < N; ++i)
        key.perm.pis[i] = r.permutation(static_cast<uint32_t>(R));
    key.pad.resize(N);
    for (uint32_t i = 0; i < N; ++i) key.pad[i] = r.uniform_below(R);
    return key;
}

EditSecretKey edit_keygen(const EditParams& params, Prng& rng) {
    return edit_keygen_from_seed(params, rng.next_u64());
}

namespace {

EditEncodeTrace encode_from_z_traced(const EditParams& params, const EditSecretKey& key,
                                     const std::vector<uint64_t>& z_ids, Prng& rng) {
    uint32_t N = params.positions();
    if (z_ids.size() != N) throw Error("LengthMismatch", "z must have N symbols");
    uint64_t R = params.symbol_space();
    uint32_t qbits = bit_width_of(params.q);
    EditEncodeTrace trace;
    trace.word.reserve(params.word_bits());
    trace.chunk_index.reserve(params.m);
    trace.chunk_symbol.reserve(params.m);
    std::vector<bool> seen(N, false);
    for (uint32_t j = 0; j < params.m; ++j) {
        uint32_t idx = static_cast<uint32_t>(rng.uniform_below(N));
        uint64_t zp;
        if (!seen[idx]) {
            seen[idx] = true;
            zp = key.perm.pis[idx][z_ids[key.perm.sigma[idx]]];
        } else {
            zp = rng.uniform_below(R);
        }
        trace.chunk_index.push_back(idx);
        trace.chunk_symbol.push_back(zp);
        append_bits(trace.word, idx, params.index_bits());
        uint64_t rest = zp;
        for (uint32_t t = 0; t < params.s; ++t) {
            append_bits(trace.word, rest % params.q, qbits);
            rest /= params.q;
        }
    }
    return trace;
}

std::vector<uint64_t> draw_padded_symbols(const EditParams& params, const EditSecretKey& key,
                                          Prng& rng) {
    CodeSpec spec = params.code_spec();
    RSCodeword cw = sample_codeword(spec, rng);
    uint64_t R = params.symbol_space();
    std::vector<uint64_t> ids(params.positions());
    if (params.s == 1) {
        ids = cw.symbols.elems;
    } else {
        FRSCodeword folded = frs_fold(spec, cw);
        for (uint32_t i = 0; i < params.positions(); ++i)
            ids[i] = frs_tuple_index(spec, folded.symbols[i]);
    }
    // Substitution channel at the (folded) symbol level.
    for (auto& v : ids)
        if (rng.bernoulli(params.eta)) v = rng.uniform_below(R);
    std::vector<uint64_t> z(params.positions());
    for (uint32_t i = 0; i < params.positions(); ++i)
        z[i] = id_add(params.q, params.s, ids[i], key.pad[i]);
    return z;
}

}  // namespace

BitString edit_encode_from_z(const EditParams& params, const EditSecretKey& key,
                             const std::vector<uint64_t>& z_ids, Prng& rng) {
    return encode_from_z_traced(params, key, z_ids, rng).word;
}

EditEncodeTrace edit_encode_traced(const EditParams& params, const EditSecretKey& key,
                                   Prng& rng) {
    std::vector<uint64_t> z = draw_padded_symbols(params, key, rng);
    return encode_from_z_traced(params, key, z, rng);
}

BitString edit_encode(const EditParams& params, const EditSecretKey& key, Prng& rng) {
    return edit_encode_traced(params, key, rng).word;
}

namespace {

// Parse a chunk-sized bit pattern into (index, symbol id); false when a
// field is out of range.
bool parse_chunk(const EditParams& params, uint64_t pattern, uint32_t* index, uint64_t* id) {
    uint32_t vb = params.value_bits();
    uint64_t idx = pattern >> vb;
    if (idx >= params.positions()) return false;
    uint32_t qbits = bit_width_of(params.q);
    uint64_t id_acc = 0, mul = 1;
    for (uint32_t t = 0; t < params.s; ++t) {
        uint32_t shift = vb - (t + 1) * qbits;
        uint64_t digit = (pattern >> shift) & ((1ull << qbits) - 1);
        if (digit >= params.q) return false;
        id_acc += digit * mul;
        mul *= params.q;
    }
    *index = static_cast<uint32_t>(idx);
    *id = id_acc;
    return true;
}

}  // namespace

EditDecodeTrace edit_decode_traced(const EditParams& params, const EditSecretKey& key,
                                   const BitString& y) {
    uint32_t N = params.positions();
    uint64_t R = params.symbol_space();
    uint32_t cb = params.chunk_bits();
    uint32_t hamb = params.window_ham_budget();
    uint32_t editb = params.window_edit_budget();

    // Inverse permutation tables for the hot path.
    std::vector<std::vector<uint32_t>> pis_inv(N, std::vector<uint32_t>(R));
    for (uint32_t i = 0; i < N; ++i)
        for (uint32_t v = 0; v < R; ++v) pis_inv[i][key.perm.pis[i][v]] = v;

    std::vector<std::vector<uint64_t>> lists(N);
    std::vector<std::unordered_set<uint64_t>> seen(N);
    size_t adds = 0;
    auto offer = [&](uint32_t chunk_index, uint64_t id) {
        uint64_t val = pis_inv[chunk_index][id];
        uint32_t w = key.perm.sigma[chunk_index];
        if (!seen[w].insert(val).second) return;
        ++adds;
        if (lists[w].size() < params.l_max) lists[w].push_back(val);
    };

    if (y.size() >= cb) {
        uint64_t window = 0;
        uint64_t mask = (cb == 64) ? ~0ull : ((1ull << cb) - 1);
        for (uint32_t b = 0; b < cb; ++b) window = (window << 1) | y[b];
        for (size_t j = 0;; ++j) {
            uint32_t ci;
            uint64_t id;
            if (editb == 0) {
                // Exact window, then the Hamming ball around it.
                if (parse_chunk(params, window, &ci, &id)) offer(ci, id);
                if (hamb >= 1) {
                    for (uint32_t b1 = 0; b1 < cb; ++b1) {
                        uint64_t w1 = window ^ (1ull << b1);
                        if (parse_chunk(params, w1, &ci, &id)) offer(ci, id);
                        if (hamb >= 2) {
                            for (uint32_t b2 = b1 + 1; b2 < cb; ++b2)
                                if (parse_chunk(params, w1 ^ (1ull << b2), &ci, &id))
                                    offer(ci, id);
                        }
                    }
                }
            } else {
                // Candidate centers within the window's edit ball (indel
                // distance is symmetric); restrict to chunk-length strings.
                BitString wbits(cb);
                for (uint32_t b = 0; b < cb; ++b) wbits[b] = (window >> (cb - 1 - b)) & 1;
                for (const BitString& cand : edit_ball_enumerate(wbits, editb)) {
                    if (cand.size() != cb) continue;
                    uint64_t pattern = 0;
                    for (uint8_t bit : cand) pattern = (pattern << 1) | bit;
                    if (parse_chunk(params, pattern, &ci, &id)) offer(ci, id);
                }
            }
            if (j + cb >= y.size()) break;
            window = ((window << 1) | y[j + cb]) & mask;
        }
    }

    EditDecodeTrace trace;
    trace.adds_before_cap = adds;
    trace.lists.lists.resize(N);
    trace.lists.ell_max = params.l_max;
    for (uint32_t w = 0; w < N; ++w) {
        trace.lists.lists[w].reserve(lists[w].size());
        for (uint64_t v : lists[w])
            trace.lists.lists[w].push_back(id_sub(params.q, params.s, v, key.pad[w]));
    }

    CodeSpec spec = params.code_spec();
    RecoveryResult rec;
    if (params.s == 1) {
        ProbeOptions opts;
        opts.rounds = params.probe_rounds;
        rec = list_recover_probe(spec, trace.lists, params.t_rec, opts);
    } else {
        rec = list_recover_bruteforce(spec, trace.lists, params.t_rec);
    }
    trace.detected = !rec.codewords.empty();
    return trace;
}

bool edit_decode(const EditParams& params, const EditSecretKey& key, const BitString& y) {
    return edit_decode_traced(params, key, y).detected;
}

BitString edit_channel_apply(const BitString& y, double eps_edit, EditStrategy strategy,
                             const EditParams& params, Prng& rng) {
    size_t budget = static_cast<size_t>(eps_edit * static_cast<double>(y.size()));
    BitString out(y);
    switch (strategy) {
        case EditStrategy::Random: {
            for (size_t e = 0; e < budget; ++e) {
                if (rng.bernoulli(0.5) || out.empty()) {
                    size_t pos = rng.uniform_below(out.size() + 1);
                    out.insert(out.begin() + static_cast<long>(pos),
                               static_cast<uint8_t>(rng.uniform_below(2)));
                } else {
                    size_t pos = rng.uniform_below(out.size());
                    out.erase(out.begin() + static_cast<long>(pos));
                }
            }
            break;
        }
        case EditStrategy::BoundaryDeletions: {
            // One-bit deletions inside chunk header regions, spread across
            // the word, applied back to front so positions stay valid.
            uint32_t cb = params.chunk_bits();
            uint32_t ib = params.index_bits();
            std::vector<size_t> positions;
            for (size_t j = 0; j < budget; ++j) {
                size_t chunk = (j * params.m) / std::max<size_t>(budget, 1);
                size_t pos = chunk * cb + (j % ib);
                if (pos < out.size()) positions.push_back(pos);
            }
            std::sort(positions.rbegin(), positions.rend());
            for (size_t pos : positions) out.erase(out.begin() + static_cast<long>(pos));
            break;
        }
        case EditStrategy::Burst: {
            if (budget >= out.size()) {
                out.clear();
                break;
            }
            size_t start = rng.uniform_below(out.size() - budget + 1);
            out.erase(out.begin() + static_cast<long>(start),
                      out.begin() + static_cast<long>(start + budget));
            break;
        }
    }
    return out;
}

BitString flip_channel_apply(const BitString& y, double frac, Prng& rng) {
    size_t budget = static_cast<size_t>(frac * static_cast<double>(y.size()));
    BitString out(y);
    std::vector<uint32_t> order(out.size());
    for (uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    for (size_t j = 0; j < budget && j < order.size(); ++j) out[order[j]] ^= 1;
    return out;
}

// ---------------------------------------------------------------------------
// Serialization.
// ---------------------------------------------------------------------------

namespace {

std::string seed_to_hex(uint64_t seed) {
    char buf[17];
    snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(seed));
    return buf;
}

uint64_t seed_from_hex(const std::string& hex) {
    return std::stoull(hex, nullptr, 16);
}

}  // namespace

std::string subst_key_to_json(const CodeSpec& spec, const SubstSecretKey& key, bool arrays) {
    nlohmann::json j;
    j["version"] = 1;
    j["kind"] = "subst";
    j["q"] = spec.ctx.q();
    j["n"] = spec.n;
    j["k"] = spec.k;
    j["s"] = spec.s;
    if (key.perm.source_seed && !arrays) {
        j["seed"] = seed_to_hex(*key.perm.source_seed);
    } else {
        j["sigma"] = key.perm.sigma;
        j["pis"] = key.perm.pis;
        j["pad"] = key.pad.elems;
    }
    return j.dump(2) + "\n";
}

LoadedSubstKey subst_key_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("kind") != "subst") throw Error("BadKeyFile", "expected kind \"subst\"");
    FieldCtx ctx(j.at("q").get<uint64_t>());
    CodeSpec spec(ctx, j.at("k").get<uint32_t>(), j.at("s").get<uint32_t>());
    if (j.contains("seed"))
        return {spec, subst_key_from_stream(spec, seed_from_hex(j.at("seed").get<std::string>()))};
    SubstSecretKey key;
    key.perm = PermKey::from_arrays(spec.n, ctx.q(), j.at("sigma").get<std::vector<uint32_t>>(),
                                    j.at("pis").get<std::vector<std::vector<uint32_t>>>());
    key.pad = FqVec(spec.ctx, j.at("pad").get<std::vector<uint64_t>>());
    for (uint64_t v : key.pad.elems)
        if (v >= ctx.q()) throw Error("BadKeyFile", "pad entry out of range");
    return {spec, std::move(key)};
}

std::string edit_key_to_json(const EditParams& params, const EditSecretKey& key, bool arrays) {
    nlohmann::json j;
    j["version"] = 1;
    j["kind"] = "edit";
    j["preset"] = params.name;
    j["q"] = params.q;
    j["n"] = params.n;
    j["k"] = params.k;
    j["s"] = params.s;
    if (key.perm.source_seed && !arrays) {
        j["seed"] = seed_to_hex(*key.perm.source_seed);
    } else {
        j["sigma"] = key.perm.sigma;
        j["pis"] = key.perm.pis;
        j["pad"] = key.pad;
    }
    return j.dump(2) + "\n";
}

LoadedEditKey edit_key_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("kind") != "edit") throw Error("BadKeyFile", "expected kind \"edit\"");
    EditParams params = EditParams::by_name(j.value("preset", "edit-desk"));
    if (j.at("q").get<uint64_t>() != params.q || j.at("n").get<uint32_t>() != params.n ||
        j.at("k").get<uint32_t>() != params.k || j.at("s").get<uint32_t>() != params.s)
        throw Error("BadKeyFile", "key dimensions do not match the preset");
    if (j.contains("seed"))
        return {params,
                edit_keygen_from_seed(params, seed_from_hex(j.at("seed").get<std::string>()))};
    EditSecretKey key;
    key.perm = PermKey::from_arrays(params.positions(), params.symbol_space(),
                                    j.at("sigma").get<std::vector<uint32_t>>(),
                                    j.at("pis").get<std::vector<std::vector<uint32_t>>>());
    key.pad = j.at("pad").get<std::vector<uint64_t>>();
    if (key.pad.size() != params.positions()) throw Error("BadKeyFile", "pad length mismatch");
    for (uint64_t v : key.pad)
        if (v >= params.symbol_space()) throw Error("BadKeyFile", "pad entry out of range");
    return {params, std::move(key)};
}

std::string bits_to_hex(const BitString& bits) {
    std::ostringstream out;
    out << bits.size() << ' ';
    uint8_t byte = 0;
    for (size_t i = 0; i < bits.size(); ++i) {
        byte = static_cast<uint8_t>((byte << 1) | bits[i]);
        if (i % 8 == 7) {
            out << "0123456789abcdef"[byte >> 4] << "0123456789abcdef"[byte & 0xF];
            byte = 0;
        }
    }
    if (bits.size() % 8 != 0) {
        byte = static_cast<uint8_t>(byte << (8 - bits.size() % 8));
        out << "0123456789abcdef"[byte >> 4] << "0123456789abcdef"[byte & 0xF];
    }
    return out.str();
}

BitString hex_to_bits(const std::string& text) {
    std::istringstream in(text);
    size_t len = 0;
    std::string hex;
    if (!(in >> len >> hex)) throw Error("BadHex", "expected \"<bitlen> <hex>\"");
    if (hex.size() * 4 < len) throw Error("BadHex", "hex shorter than declared bit length");
    BitString bits;
    bits.reserve(len);
    for (size_t i = 0; i < len; ++i) {
        char c = hex[i / 4];
        int v = (c >= '0' && c <= '9')   ? c - '0'
                : (c >= 'a' && c <= 'f') ? c - 'a' + 10
                : (c >= 'A' && c <= 'F') ? c - 'A' + 10
                                         : -1;
        if (v < 0) throw Error("BadHex", "invalid hex digit");
        bits.push_back((v >> (3 - i % 4)) & 1);
    }
    return bits;
}

}  // namespace prclab
