#pragma once

#include <string>
#include <vector>

namespace strata {

/// Weight: weakly decreasing tuples k (length a) and l (length b) plus a
/// twist integer r.  The twist is carried but ignored by the predicates.
struct Weight {
    std::vector<int> k;
    std::vector<int> l;
    int r = 0;
};

Weight make_weight(std::vector<int> k, std::vector<int> l, int r = 0);

/// True iff the tuple is weakly decreasing.
bool dominant(const std::vector<int>& v);

/// True iff there are a-h indexes with equal k-value v and b-h indexes j with
/// l_j >= v.
bool criterion_indexes(const Weight& w, int h);

/// Single-bound variant: some k-value repeated a-h times that is
/// <= l_{b-h+1}.  Stricter than criterion_indexes in general; provided as a
/// convenience predicate.
bool criterion_single_bound(const Weight& w, int h);

/// Blockwise permutation pair with increasing runs w1 on {1..h} and
/// {h+1..a}, w2 on {1..b-h} and {b-h+1..b}; |set| = C(a,h) C(b,h).
struct PWElement {
    std::vector<int> w1; // permutation of 0..a-1 (0-indexed)
    std::vector<int> w2; // permutation of 0..b-1
};

std::vector<PWElement> enumerate_PW(int a, int b, int h);

/// The candidate section-bundle weight attached to (w1, w2): blocks
/// (-k on w1(1..h) | -k on w1(h+1..a) | reversed -l on w2(1..b-h) |
///  reversed -l on w2(b-h+1..b)); the middle two blocks are concatenated.
/// Dominance = weakly decreasing within the first block, within the middle
/// concatenation, and within the last block.
bool pw_weight_dominant(const Weight& w, int h, const PWElement& e);

/// True iff some PW transform of (-k, l-dual) is dominant.
bool orbit_dominance_oracle(const Weight& w, int h);

struct SweepRow {
    std::vector<int> k, l;
    int h;
    bool criterion;
    bool oracle;
};

/// All weights with entries in [-range, range] for the given (a, b) and h;
/// returns only the rows violating criterion-false => oracle-false, unless
/// keep_all is set.
std::vector<SweepRow> sweep_weights(int a, int b, int h, int range, bool keep_all = false);

} // namespace strata
