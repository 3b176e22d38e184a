#include "prclab/decoding.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "prclab/prng.hpp"

namespace prclab {

namespace {

using Matrix = std::vector<std::vector<uint64_t>>;

// Row-reduce [A | b] and return one solution, or nullopt if inconsistent.
// Free variables are set to zero.
std::optional<std::vector<uint64_t>> solve_linear(const FieldCtx& f, Matrix A,
                                                  std::vector<uint64_t> b) {
    size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    std::vector<size_t> pivot_col(rows, SIZE_MAX);
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && A[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[rank]);
        std::swap(b[piv], b[rank]);
        uint64_t inv = f.inv(A[rank][col]);
        for (size_t c = col; c < cols; ++c) A[rank][c] = f.mul(A[rank][c], inv);
        b[rank] = f.mul(b[rank], inv);
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || A[r][col] == 0) continue;
            uint64_t factor = A[r][col];
            for (size_t c = col; c < cols; ++c)
                A[r][c] = f.sub(A[r][c], f.mul(factor, A[rank][c]));
            b[r] = f.sub(b[r], f.mul(factor, b[rank]));
        }
        pivot_col[rank] = col;
        ++rank;
    }
    for (size_t r = rank; r < rows; ++r)
        if (b[r] != 0) return std::nullopt;
    std::vector<uint64_t> x(cols, 0);
    for (size_t r = 0; r < rank; ++r) x[pivot_col[r]] = b[r];
    return x;
}

// One nonzero kernel vector of A, or nullopt if A has full column rank.
std::optional<std::vector<uint64_t>> kernel_vector(const FieldCtx& f, Matrix A) {
    size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    if (rows == 0) {
        std::vector<uint64_t> x(cols, 0);
        if (cols == 0) return std::nullopt;
        x[0] = 1;
        return x;
    }
    std::vector<size_t> pivot_of_col(cols, SIZE_MAX);
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && A[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(A[piv], A[rank]);
        uint64_t inv = f.inv(A[rank][col]);
        for (size_t c = col; c < cols; ++c) A[rank][c] = f.mul(A[rank][c], inv);
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || A[r][col] == 0) continue;
            uint64_t factor = A[r][col];
            for (size_t c = col; c < cols; ++c)
                A[r][c] = f.sub(A[r][c], f.mul(factor, A[rank][c]));
        }
        pivot_of_col[col] = rank;
        ++rank;
    }
    size_t free_col = SIZE_MAX;
    for (size_t col = 0; col < cols; ++col)
        if (pivot_of_col[col] == SIZE_MAX) {
            free_col = col;
            break;
        }
    if (free_col == SIZE_MAX) return std::nullopt;
    std::vector<uint64_t> x(cols, 0);
    x[free_col] = 1;
    for (size_t col = 0; col < cols; ++col) {
        size_t r = pivot_of_col[col];
        if (r != SIZE_MAX) x[col] = f.neg(A[r][free_col]);
    }
    return x;
}

// Dense bivariate polynomial, coefficient of X^a Y^b at c[a][b].
struct BiPoly {
    std::vector<std::vector<uint64_t>> c;

    size_t dx() const { return c.size(); }
    size_t dy() const { return c.empty() ? 0 : c[0].size(); }
    bool is_zero() const {
        for (const auto& row : c)
            for (uint64_t v : row)
                if (v) return false;
        return true;
    }
};

// All roots of a univariate polynomial by exhaustive trial (q is small).
std::vector<uint64_t> univariate_roots(const FieldCtx& f, const std::vector<uint64_t>& poly) {
    std::vector<uint64_t> roots;
    for (uint64_t y = 0; y < f.q(); ++y) {
        uint64_t acc = 0;
        for (size_t i = poly.size(); i-- > 0;) acc = f.add(f.mul(acc, y), poly[i]);
        if (acc == 0) roots.push_back(y);
    }
    return roots;
}

}  // namespace

size_t RecoveryLists::max_list_size() const {
    size_t m = 0;
    for (const auto& l : lists) m = std::max(m, l.size());
    return m;
}

size_t RecoveryLists::total_mass() const {
    size_t m = 0;
    for (const auto& l : lists) m += l.size();
    return m;
}

bool RecoveryResult::contains(const Message& m) const {
    for (const auto& rc : codewords)
        if (rc.message.coeffs.elems == m.coeffs.elems) return true;
    return false;
}

uint64_t frs_tuple_index(const CodeSpec& spec, const std::vector<uint64_t>& tuple) {
    uint64_t idx = 0;
    for (size_t t = tuple.size(); t-- > 0;) idx = idx * spec.ctx.q() + tuple[t];
    return idx;
}

std::vector<uint64_t> frs_index_tuple(const CodeSpec& spec, uint64_t index) {
    std::vector<uint64_t> tuple(spec.s);
    for (uint32_t t = 0; t < spec.s; ++t) {
        tuple[t] = index % spec.ctx.q();
        index /= spec.ctx.q();
    }
    return tuple;
}

std::vector<uint64_t> encode_symbol_ids(const CodeSpec& spec, const Message& msg) {
    RSCodeword cw = rs_encode(spec, msg);
    if (spec.s == 1) return cw.symbols.elems;
    FRSCodeword folded = frs_fold(spec, cw);
    std::vector<uint64_t> ids(spec.N());
    for (uint32_t j = 0; j < spec.N(); ++j) ids[j] = frs_tuple_index(spec, folded.symbols[j]);
    return ids;
}

uint32_t agreement_count(const CodeSpec& spec, const Message& msg, const RecoveryLists& lists) {
    std::vector<uint64_t> ids = encode_symbol_ids(spec, msg);
    uint32_t agree = 0;
    for (size_t i = 0; i < ids.size() && i < lists.lists.size(); ++i) {
        const auto& l = lists.lists[i];
        if (std::find(l.begin(), l.end(), ids[i]) != l.end()) ++agree;
    }
    return agree;
}

std::optional<Message> unique_decode(const CodeSpec& spec, const FqVec& received,
                                     uint32_t max_errors) {
    if (spec.s != 1) throw Error("FoldMismatch", "unique_decode works on plain RS only");
    if (received.size() != spec.n)
        throw Error("LengthMismatch", "received word must have length n");
    uint32_t radius = (spec.n - spec.k) / 2;
    if (max_errors > radius)
        throw Error("BudgetTooLarge", "max_errors exceeds floor((n-k)/2) = " +
                                          std::to_string(radius));
    const FieldCtx& f = spec.ctx;
    uint32_t e = max_errors;
    // Unknowns: E coefficients e_0..e_{e-1} (E monic of degree e), then
    // Q coefficients q_0..q_{e+k-1}. Equation at x_i:
    //   Q(x_i) - y_i * (x_i^e + sum_j e_j x_i^j) = 0.
    size_t ecount = e, qcount = e + spec.k;
    Matrix A(spec.n, std::vector<uint64_t>(ecount + qcount, 0));
    std::vector<uint64_t> b(spec.n, 0);
    for (uint32_t i = 0; i < spec.n; ++i) {
        uint64_t x = spec.point(i), y = received[i];
        uint64_t xp = 1;
        for (size_t j = 0; j < ecount; ++j) {
            A[i][j] = f.neg(f.mul(y, xp));
            xp = f.mul(xp, x);
        }
        b[i] = f.mul(y, xp);  // y * x^e
        xp = 1;
        for (size_t j = 0; j < qcount; ++j) {
            A[i][ecount + j] = xp;
            xp = f.mul(xp, x);
        }
    }
    auto sol = solve_linear(f, std::move(A), std::move(b));
    if (!sol) return std::nullopt;
    std::vector<uint64_t> E(sol->begin(), sol->begin() + ecount);
    E.push_back(1);  // monic
    std::vector<uint64_t> Q(sol->begin() + ecount, sol->end());
    // p = Q / E by long division; any remainder means no codeword.
    std::vector<uint64_t> rem = Q;
    std::vector<uint64_t> quot(qcount, 0);
    size_t de = E.size() - 1;
    for (size_t d = rem.size(); d-- > de;) {
        if (rem[d] == 0) continue;
        uint64_t factor = rem[d];  // E is monic
        quot[d - de] = factor;
        for (size_t j = 0; j <= de; ++j)
            rem[d - de + j] = f.sub(rem[d - de + j], f.mul(factor, E[j]));
    }
    for (size_t d = 0; d < std::min(rem.size(), de); ++d)
        if (rem[d] != 0) return std::nullopt;
    for (size_t d = spec.k; d < quot.size(); ++d)
        if (quot[d] != 0) return std::nullopt;
    Message m{FqVec(f, std::vector<uint64_t>(quot.begin(), quot.begin() + spec.k))};
    RSCodeword cw = rs_encode(spec, m);
    uint32_t dist = 0;
    for (uint32_t i = 0; i < spec.n; ++i)
        if (cw.symbols[i] != received[i]) ++dist;
    if (dist > max_errors) return std::nullopt;
    return m;
}

namespace {

void check_oracle_guard(const CodeSpec& spec) {
    double log2_count = spec.k * std::log2(static_cast<double>(spec.ctx.q()));
    if (log2_count > 24.0)
        throw Error("OracleTooLarge", "q^k exceeds 2^24 oracle guard");
}

RecoveryResult enumerate_recover(const CodeSpec& spec, const RecoveryLists& lists,
                                 uint32_t t_rec) {
    check_oracle_guard(spec);
    uint64_t q = spec.ctx.q();
    uint64_t total = 1;
    for (uint32_t i = 0; i < spec.k; ++i) total *= q;
    size_t npos = spec.s == 1 ? spec.n : spec.N();
    // Position membership as sorted vectors for binary search.
    std::vector<std::vector<uint64_t>> sorted(lists.lists);
    for (auto& l : sorted) std::sort(l.begin(), l.end());
    RecoveryResult out;
    for (uint64_t code = 0; code < total; ++code) {
        Message m{FqVec(spec.ctx, spec.k)};
        uint64_t rest = code;
        for (uint32_t i = 0; i < spec.k; ++i) {
            m.coeffs[i] = rest % q;
            rest /= q;
        }
        std::vector<uint64_t> ids = encode_symbol_ids(spec, m);
        uint32_t agree = 0;
        for (size_t i = 0; i < npos && i < sorted.size(); ++i)
            if (std::binary_search(sorted[i].begin(), sorted[i].end(), ids[i])) ++agree;
        if (agree >= t_rec && t_rec > 0)
            out.codewords.push_back({std::move(m), agree});
        else if (t_rec == 0)
            out.codewords.push_back({std::move(m), agree});
    }
    return out;
}

}  // namespace

RecoveryResult list_recover_bruteforce(const CodeSpec& spec, const RecoveryLists& lists,
                                       uint32_t t_rec) {
    return enumerate_recover(spec, lists, t_rec);
}

RecoveryResult list_recover_frs(const CodeSpec& spec, const RecoveryLists& lists,
                                uint32_t t_rec) {
    if (spec.s < 2) throw Error("FoldMismatch", "list_recover_frs needs s >= 2");
    double ell = static_cast<double>(std::max<size_t>(lists.max_list_size(), 1));
    double bound =
        spec.k * std::pow(static_cast<double>(spec.N()) * ell, 1.0 / (spec.s + 1)) + 2.0;
    if (static_cast<double>(t_rec) < bound)
        throw Error("AgreementBelowGuarantee",
                    "t_rec below k (N ell)^(1/(s+1)) + 2 = " + std::to_string(bound));
    return enumerate_recover(spec, lists, t_rec);
}

namespace {

// Number of monomials X^a Y^b with a + (k-1) b <= D.
uint64_t monomial_count(uint32_t k, uint64_t D) {
    uint64_t count = 0;
    for (uint64_t b = 0; (k - 1) * b <= D; ++b) count += D - (k - 1) * b + 1;
    return count;
}

struct Monomial {
    uint32_t a, b;
};

void rr_recurse(const FieldCtx& f, BiPoly q, uint32_t k, uint32_t depth,
                std::vector<uint64_t>& stack, std::vector<std::vector<uint64_t>>& out) {
    // Strip the largest power of X dividing Q.
    size_t v = 0;
    while (v < q.c.size()) {
        bool zero_row = true;
        for (uint64_t val : q.c[v])
            if (val) zero_row = false;
        if (!zero_row) break;
        ++v;
    }
    if (v == q.c.size()) {
        // Q became identically zero: every completion is a root; only
        // reachable from a zero interpolation polynomial, which we exclude.
        return;
    }
    if (v > 0) q.c.erase(q.c.begin(), q.c.begin() + static_cast<long>(v));

    std::vector<uint64_t> roots = univariate_roots(f, q.c[0]);
    for (uint64_t y0 : roots) {
        stack.push_back(y0);
        if (depth + 1 == k) {
            out.push_back(stack);
        } else {
            // Q(X, y0 + X*Y)
            size_t dx = q.dx(), dy = q.dy();
            BiPoly next;
            next.c.assign(dx + dy, std::vector<uint64_t>(dy, 0));
            std::vector<std::vector<uint64_t>> binom(dy + 1, std::vector<uint64_t>(dy + 1, 0));
            for (size_t bb = 0; bb <= dy; ++bb) {
                binom[bb][0] = 1;
                for (size_t j = 1; j <= bb; ++j)
                    binom[bb][j] =
                        f.add(binom[bb - 1][j - 1], j <= bb - 1 ? binom[bb - 1][j] : 0);
            }
            for (size_t a = 0; a < dx; ++a) {
                for (size_t b = 0; b < dy; ++b) {
                    uint64_t coef = q.c[a][b];
                    if (!coef) continue;
                    uint64_t y0pow = 1;  // y0^0 upward, paired with j = b down
                    for (size_t jj = 0; jj <= b; ++jj) {
                        size_t j = b - jj;  // y0 exponent is jj = b - j
                        uint64_t term = f.mul(coef, f.mul(binom[b][j], y0pow));
                        next.c[a + j][j] = f.add(next.c[a + j][j], term);
                        y0pow = f.mul(y0pow, y0);
                    }
                }
            }
            rr_recurse(f, std::move(next), k, depth + 1, stack, out);
        }
        stack.pop_back();
    }
}

}  // namespace

RecoveryResult list_recover_rs(const CodeSpec& spec, const RecoveryLists& lists,
                               uint32_t t_rec) {
    if (spec.s != 1) throw Error("FoldMismatch", "list_recover_rs works on plain RS only");
    const FieldCtx& f = spec.ctx;
    size_t ell = lists.max_list_size();
    size_t mass = lists.total_mass();
    // Classical guarantee: t_rec >= sqrt((k-1) ell n), checked exactly.
    if (static_cast<uint64_t>(t_rec) * t_rec <
        static_cast<uint64_t>(spec.k - 1) * ell * spec.n)
        throw Error("AgreementBelowGuarantee",
                    "t_rec^2 < (k-1) * ell * n; caller may still run the brute-force oracle");
    RecoveryResult out;
    if (mass == 0 || t_rec == 0) {
        if (t_rec == 0) return enumerate_recover(spec, lists, 0);
        return out;
    }
    if (spec.k == 1) {
        // Degenerate: messages are constants; scan the alphabet directly.
        for (uint64_t v = 0; v < f.q(); ++v) {
            Message m{FqVec(f, std::vector<uint64_t>{v})};
            uint32_t agree = agreement_count(spec, m, lists);
            if (agree >= t_rec) out.codewords.push_back({std::move(m), agree});
        }
        return out;
    }

    // Escalate the interpolation multiplicity until the monomial count
    // certifies that every codeword with agreement >= t_rec is a Y-root.
    constexpr uint32_t kMaxMult = 32;
    constexpr uint64_t kMaxConstraints = 3000;
    uint32_t mult = 0;
    uint64_t D = 0;
    for (uint32_t w = 1; w <= kMaxMult; ++w) {
        uint64_t constraints = static_cast<uint64_t>(mass) * w * (w + 1) / 2;
        if (constraints > kMaxConstraints) break;
        uint64_t d = 0;
        while (monomial_count(spec.k, d) <= constraints) ++d;
        if (d + 1 <= static_cast<uint64_t>(w) * t_rec) {  // d <= w*t_rec - 1
            mult = w;
            D = d;
            break;
        }
    }
    if (mult == 0)
        throw Error("InterpolationTooLarge",
                    "no multiplicity within the size guard certifies t_rec");

    // Monomial basis.
    std::vector<Monomial> basis;
    for (uint32_t b = 0; static_cast<uint64_t>(spec.k - 1) * b <= D; ++b)
        for (uint32_t a = 0; a + static_cast<uint64_t>(spec.k - 1) * b <= D; ++a)
            basis.push_back({a, b});

    // Binomial table up to D+1.
    size_t bmax = static_cast<size_t>(D) + 2;
    std::vector<std::vector<uint64_t>> binom(bmax, std::vector<uint64_t>(bmax, 0));
    for (size_t i = 0; i < bmax; ++i) {
        binom[i][0] = 1;
        for (size_t j = 1; j <= i; ++j)
            binom[i][j] = f.add(binom[i - 1][j - 1], j <= i - 1 ? binom[i - 1][j] : 0);
    }

    // Constraint rows: for every listed point, every Hasse derivative of
    // order < mult must vanish.
    Matrix A;
    for (uint32_t i = 0; i < spec.n && i < lists.lists.size(); ++i) {
        uint64_t x = spec.point(i);
        for (uint64_t y : lists.lists[i]) {
            for (uint32_t al = 0; al < mult; ++al) {
                for (uint32_t be = 0; al + be < mult; ++be) {
                    std::vector<uint64_t> row(basis.size(), 0);
                    for (size_t m = 0; m < basis.size(); ++m) {
                        uint32_t a = basis[m].a, b = basis[m].b;
                        if (a < al || b < be) continue;
                        uint64_t coef = f.mul(binom[a][al], binom[b][be]);
                        coef = f.mul(coef, f.pow(x, a - al));
                        coef = f.mul(coef, f.pow(y, b - be));
                        row[m] = coef;
                    }
                    A.push_back(std::move(row));
                }
            }
        }
    }

    auto q_vec = kernel_vector(f, std::move(A));
    if (!q_vec)
        throw Error("InterpolationTooLarge",
                    "interpolation system unexpectedly has full column rank");
    BiPoly Q;
    uint32_t dy_max = 0;
    for (const auto& m : basis) dy_max = std::max(dy_max, m.b);
    Q.c.assign(D + 1, std::vector<uint64_t>(dy_max + 1, 0));
    for (size_t m = 0; m < basis.size(); ++m) Q.c[basis[m].a][basis[m].b] = (*q_vec)[m];

    std::vector<std::vector<uint64_t>> coeff_stacks;
    std::vector<uint64_t> stack;
    rr_recurse(f, Q, spec.k, 0, stack, coeff_stacks);

    std::set<std::vector<uint64_t>> seen;
    for (const auto& coeffs : coeff_stacks) {
        if (!seen.insert(coeffs).second) continue;
        Message m{FqVec(f, coeffs)};
        uint32_t agree = agreement_count(spec, m, lists);
        if (agree >= t_rec) out.codewords.push_back({std::move(m), agree});
    }
    std::sort(out.codewords.begin(), out.codewords.end(),
              [](const RecoveredCodeword& a, const RecoveredCodeword& b) {
                  return a.message.coeffs.elems < b.message.coeffs.elems;
              });
    return out;
}

RecoveryResult list_recover_probe(const CodeSpec& spec, const RecoveryLists& lists,
                                  uint32_t t_rec, const ProbeOptions& opts) {
    if (spec.s != 1) throw Error("FoldMismatch", "list_recover_probe works on plain RS only");
    const FieldCtx& f = spec.ctx;
    uint32_t k = spec.k;
    RecoveryResult out;
    if (t_rec < k + 1)
        throw Error("AgreementBelowGuarantee", "probe recovery needs t_rec >= k+1");

    std::vector<uint32_t> occupied;
    for (uint32_t i = 0; i < lists.lists.size() && i < spec.n; ++i)
        if (!lists.lists[i].empty()) occupied.push_back(i);
    if (occupied.size() < k + 1) return out;

    // Precomputed evaluation points and per-position membership bitmasks.
    std::vector<uint64_t> pts(spec.n);
    for (uint32_t i = 0; i < spec.n; ++i) pts[i] = spec.point(i);
    size_t words = (f.q() + 63) / 64;
    std::vector<uint64_t> mask(spec.n * words, 0);
    for (uint32_t i = 0; i < lists.lists.size() && i < spec.n; ++i)
        for (uint64_t v : lists.lists[i]) mask[i * words + v / 64] |= 1ull << (v % 64);
    auto in_list = [&](uint32_t pos, uint64_t v) {
        return (mask[pos * words + v / 64] >> (v % 64)) & 1;
    };

    // Fixed scan order for the staged agreement check.
    Prng rng(opts.seed);
    std::vector<uint32_t> scan(occupied);
    rng.shuffle(scan);

    std::set<std::vector<uint64_t>> found;

    auto lagrange_coeffs = [&](const std::vector<uint32_t>& pos,
                               const std::vector<uint64_t>& vals) {
        // Solve the k x k Vandermonde system for the coefficient vector.
        Matrix V(k, std::vector<uint64_t>(k, 0));
        for (uint32_t r = 0; r < k; ++r) {
            uint64_t xp = 1;
            for (uint32_t c = 0; c < k; ++c) {
                V[r][c] = xp;
                xp = f.mul(xp, pts[pos[r]]);
            }
        }
        return solve_linear(f, std::move(V), vals);
    };

    auto full_check = [&](const std::vector<uint64_t>& coeffs) {
        if (found.count(coeffs)) return;
        Message m{FqVec(f, coeffs)};
        uint32_t agree = agreement_count(spec, m, lists);
        if (agree >= t_rec) {
            found.insert(coeffs);
            out.codewords.push_back({std::move(m), agree});
        }
    };

    // Stage-1 filter: after `stage` scan positions, demand a modest hit
    // count; junk interpolants die here almost immediately.
    size_t stage = std::min<size_t>(16, scan.size());
    uint32_t stage_min =
        static_cast<uint32_t>(stage * t_rec / (2.0 * static_cast<double>(spec.n)));

    uint32_t half = (k + 1) / 2;
    for (uint32_t round = 0; round < opts.rounds; ++round) {
        // k interpolation positions plus a pivot, all distinct.
        std::vector<uint32_t> pick;
        {
            std::vector<uint32_t> pool(occupied);
            rng.shuffle(pool);
            pick.assign(pool.begin(), pool.begin() + k + 1);
        }
        std::vector<uint32_t> ipos(pick.begin(), pick.begin() + k);
        uint32_t pivot = pick[k];

        // Lagrange basis values at the pivot point: p(x_pivot) = sum_j L_j v_j.
        std::vector<uint64_t> L(k);
        {
            bool degenerate = false;
            for (uint32_t j = 0; j < k; ++j) {
                uint64_t num = 1, den = 1;
                for (uint32_t m = 0; m < k; ++m) {
                    if (m == j) continue;
                    num = f.mul(num, f.sub(pts[pivot], pts[ipos[m]]));
                    den = f.mul(den, f.sub(pts[ipos[j]], pts[ipos[m]]));
                }
                if (den == 0) {
                    degenerate = true;
                    break;
                }
                L[j] = f.mul(num, f.inv(den));
            }
            if (degenerate) continue;
        }

        // Meet in the middle through the pivot: bucket partial sums of the
        // first `half` positions, then complete with the rest.
        std::vector<std::vector<uint64_t>> a_vals;  // value tuples, A side
        std::vector<uint64_t> a_sum;
        a_vals.push_back({});
        a_sum.push_back(0);
        for (uint32_t j = 0; j < half; ++j) {
            std::vector<std::vector<uint64_t>> nv;
            std::vector<uint64_t> ns;
            for (size_t t = 0; t < a_vals.size(); ++t) {
                for (uint64_t v : lists.lists[ipos[j]]) {
                    auto tup = a_vals[t];
                    tup.push_back(v);
                    nv.push_back(std::move(tup));
                    ns.push_back(f.add(a_sum[t], f.mul(L[j], v)));
                }
            }
            a_vals = std::move(nv);
            a_sum = std::move(ns);
        }
        std::vector<std::vector<uint32_t>> buckets(f.q());
        for (uint32_t t = 0; t < a_vals.size(); ++t) buckets[a_sum[t]].push_back(t);

        std::vector<std::vector<uint64_t>> b_vals;
        std::vector<uint64_t> b_sum;
        b_vals.push_back({});
        b_sum.push_back(0);
        for (uint32_t j = half; j < k; ++j) {
            std::vector<std::vector<uint64_t>> nv;
            std::vector<uint64_t> ns;
            for (size_t t = 0; t < b_vals.size(); ++t) {
                for (uint64_t v : lists.lists[ipos[j]]) {
                    auto tup = b_vals[t];
                    tup.push_back(v);
                    nv.push_back(std::move(tup));
                    ns.push_back(f.add(b_sum[t], f.mul(L[j], v)));
                }
            }
            b_vals = std::move(nv);
            b_sum = std::move(ns);
        }

        for (size_t tb = 0; tb < b_vals.size(); ++tb) {
            for (uint64_t s : lists.lists[pivot]) {
                uint64_t target = f.sub(s, b_sum[tb]);
                for (uint32_t ta : buckets[target]) {
                    // Assemble the k values and interpolate.
                    std::vector<uint64_t> vals(a_vals[ta]);
                    vals.insert(vals.end(), b_vals[tb].begin(), b_vals[tb].end());
                    auto coeffs = lagrange_coeffs(ipos, vals);
                    if (!coeffs) continue;
                    // Staged agreement scan with early rejection.
                    uint32_t hits = 0;
                    size_t checked = 0;
                    bool rejected = false;
                    for (uint32_t posi : scan) {
                        uint64_t acc = 0;
                        for (size_t c = coeffs->size(); c-- > 0;)
                            acc = f.add(f.mul(acc, pts[posi]), (*coeffs)[c]);
                        if (in_list(posi, acc)) ++hits;
                        ++checked;
                        if (checked == stage && hits < stage_min) {
                            rejected = true;
                            break;
                        }
                        if (hits + (scan.size() - checked) < t_rec &&
                            t_rec <= scan.size()) {
                            rejected = true;
                            break;
                        }
                        if (hits >= t_rec) break;
                    }
                    if (!rejected && hits >= t_rec) full_check(*coeffs);
                }
            }
        }
    }
    std::sort(out.codewords.begin(), out.codewords.end(),
              [](const RecoveredCodeword& a, const RecoveredCodeword& b) {
                  return a.message.coeffs.elems < b.message.coeffs.elems;
              });
    return out;
}

}  // namespace prclab
