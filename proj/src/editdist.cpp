#include "prclab/editdist.hpp"

#include <algorithm>

namespace prclab {

size_t edit_distance(const BitString& a, const BitString& b) {
    size_t la = a.size(), lb = b.size();
    std::vector<size_t> prev(lb + 1), cur(lb + 1);
    for (size_t j = 0; j <= lb; ++j) prev[j] = 0;
    for (size_t i = 1; i <= la; ++i) {
        cur[0] = 0;
        for (size_t j = 1; j <= lb; ++j) {
            if (a[i - 1] == b[j - 1])
                cur[j] = prev[j - 1] + 1;
            else
                cur[j] = std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    size_t lcs = prev[lb];
    return la + lb - 2 * lcs;
}

bool sed_member(const BitString& w, const BitString& y, const SEDBudget& budget) {
    size_t lw = w.size(), ly = y.size();
    size_t ham_max = static_cast<size_t>(budget.ham_frac * static_cast<double>(lw));
    size_t edit_max = static_cast<size_t>(budget.edit_frac * static_cast<double>(lw));
    const size_t INF = lw + ly + 1;

    // dp[j][s] = min indels aligning w[0..i) with y[0..j) using s substitutions.
    std::vector<std::vector<size_t>> prev(ly + 1, std::vector<size_t>(ham_max + 1, INF));
    std::vector<std::vector<size_t>> cur = prev;
    for (size_t j = 0; j <= ly; ++j)
        for (size_t s = 0; s <= ham_max; ++s) prev[j][s] = j;  // pure insertions
    for (size_t i = 1; i <= lw; ++i) {
        for (size_t s = 0; s <= ham_max; ++s) cur[0][s] = i;  // pure deletions
        for (size_t j = 1; j <= ly; ++j) {
            for (size_t s = 0; s <= ham_max; ++s) {
                size_t best = std::min(prev[j][s] + 1, cur[j - 1][s] + 1);
                if (w[i - 1] == y[j - 1]) {
                    best = std::min(best, prev[j - 1][s]);
                } else if (s > 0) {
                    best = std::min(best, prev[j - 1][s - 1]);
                }
                cur[j][s] = best;
            }
        }
        std::swap(prev, cur);
    }
    size_t best = INF;
    for (size_t s = 0; s <= ham_max; ++s) best = std::min(best, prev[ly][s]);
    return best <= edit_max;
}

std::set<BitString> edit_ball_enumerate(const BitString& w, size_t max_edits) {
    if (w.size() > 32 || max_edits > 4)
        throw Error("BallTooLarge", "guard: |w| <= 32 and max_edits <= 4");
    std::set<BitString> ball{w};
    std::set<BitString> frontier{w};
    for (size_t step = 0; step < max_edits; ++step) {
        std::set<BitString> next;
        for (const BitString& s : frontier) {
            for (size_t i = 0; i < s.size(); ++i) {
                BitString del(s);
                del.erase(del.begin() + static_cast<long>(i));
                if (ball.insert(del).second) next.insert(std::move(del));
            }
            for (size_t i = 0; i <= s.size(); ++i) {
                for (uint8_t bit = 0; bit < 2; ++bit) {
                    BitString ins(s);
                    ins.insert(ins.begin() + static_cast<long>(i), bit);
                    if (ball.insert(ins).second) next.insert(std::move(ins));
                }
            }
        }
        frontier = std::move(next);
    }
    return ball;
}

}  // namespace prclab
