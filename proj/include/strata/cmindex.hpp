#pragma once

#include "strata/localmodel.hpp"

#include <vector>

namespace strata {

/// Signature data per leg: an ordered list of pairs (a_i, b_i), one for each
/// embedding-and-step index.  The two-level (tau, i) structure is flattened;
/// only the order matters for the combinatorics.
struct CMShape {
    std::vector<std::pair<int, int>> legs;
};

/// Index: one (h, l) per leg with 0 <= h <= l <= min(a, b).
struct IndexC {
    std::vector<StratumLabel> labels;
    bool operator==(const IndexC& o) const;
    bool operator<(const IndexC& o) const;
};

/// Number of labels on one leg: T(n) = (n+1)(n+2)/2 for n = min(a, b).
long long leg_label_count(int a, int b);
/// Product over legs.
long long index_count(const CMShape& shape);

/// Complete duplicate-free list of indexes; throws BudgetExceeded (with the
/// cardinality) when it exceeds max_size (0 disables the guard).
std::vector<IndexC> gen_C(const CMShape& shape, long long max_size = 0);

/// Componentwise closure order: c <= cp iff per leg h <= h', l >= l'
/// matches the one-leg stratum order on every leg.
bool leq_C(const CMShape& shape, const IndexC& c, const IndexC& cp);

std::vector<IndexC> closure_set(const CMShape& shape, const IndexC& c,
                                const std::vector<IndexC>& all);

/// Covering edges of the order on gen_C.
std::vector<std::pair<IndexC, IndexC>> cm_hasse_edges(const CMShape& shape,
                                                      const std::vector<IndexC>& all);

/// Sum over legs of the one-leg dimension formula; reported as a conjectural
/// value only.
int conjectural_dim(const CMShape& shape, const IndexC& c);

} // namespace strata
