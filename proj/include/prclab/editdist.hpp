#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "prclab/error.hpp"

namespace prclab {

using BitString = std::vector<uint8_t>;

// Substitution and indel budgets, as fractions of a reference length.
struct SEDBudget {
    double ham_frac = 0.0;
    double edit_frac = 0.0;
    size_t reference_len = 0;
};

// Indel edit distance: insertions and deletions cost 1, there is NO
// substitution move (a substitution costs 2). Most libraries default to
// Levenshtein with unit substitutions; the ball-counting bounds used here
// assume insert/delete moves only. ED(a,b) = |a| + |b| - 2 LCS(a,b).
size_t edit_distance(const BitString& a, const BitString& b);

// True iff some w'' with |w''| = |w| and Ham(w, w'') <= floor(ham_frac*|w|)
// satisfies ED(w'', y) <= floor(edit_frac*|w|). 3-D DP over
// (position in w, position in y, substitutions used) minimizing indels.
bool sed_member(const BitString& w, const BitString& y, const SEDBudget& budget);

// Exact ball {y : ED(w, y) <= max_edits} over alphabet {0,1}.
// Guarded: |w| <= 32 and max_edits <= 4, else BallTooLarge.
std::set<BitString> edit_ball_enumerate(const BitString& w, size_t max_edits);

}  // namespace prclab
