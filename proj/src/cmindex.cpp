#include "strata/cmindex.hpp"

#include <algorithm>

namespace strata {

bool IndexC::operator==(const IndexC& o) const { return labels == o.labels; }

bool IndexC::operator<(const IndexC& o) const {
    if (labels.size() != o.labels.size()) return labels.size() < o.labels.size();
    for (size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < o.labels[i]) return true;
        if (o.labels[i] < labels[i]) return false;
    }
    return false;
}

long long leg_label_count(int a, int b) {
    int n = std::min(a, b);
    return static_cast<long long>(n + 1) * (n + 2) / 2;
}

long long index_count(const CMShape& shape) {
    long long total = 1;
    for (auto [a, b] : shape.legs) {
        total *= leg_label_count(a, b);
        if (total < 0) throw std::overflow_error("index_count overflow");
    }
    return total;
}

std::vector<IndexC> gen_C(const CMShape& shape, long long max_size) {
    if (shape.legs.empty()) throw std::invalid_argument("gen_C: shape has no legs");
    long long total = index_count(shape);
    if (max_size > 0 && total > max_size) throw BudgetExceeded(total);
    std::vector<IndexC> out;
    IndexC cur;
    cur.labels.resize(shape.legs.size());
    std::function<void(size_t)> rec = [&](size_t leg) {
        if (leg == shape.legs.size()) {
            out.push_back(cur);
            return;
        }
        int n = std::min(shape.legs[leg].first, shape.legs[leg].second);
        for (int h = 0; h <= n; ++h)
            for (int l = h; l <= n; ++l) {
                cur.labels[leg] = {h, l};
                rec(leg + 1);
            }
    };
    rec(0);
    return out;
}

bool leq_C(const CMShape& shape, const IndexC& c, const IndexC& cp) {
    if (c.labels.size() != shape.legs.size() || cp.labels.size() != shape.legs.size())
        throw std::invalid_argument("leq_C: shape mismatch");
    for (size_t i = 0; i < c.labels.size(); ++i)
        if (!stratum_leq(c.labels[i], cp.labels[i])) return false;
    return true;
}

std::vector<IndexC> closure_set(const CMShape& shape, const IndexC& c,
                                const std::vector<IndexC>& all) {
    std::vector<IndexC> out;
    for (const IndexC& cp : all)
        if (leq_C(shape, cp, c)) out.push_back(cp);
    return out;
}

std::vector<std::pair<IndexC, IndexC>> cm_hasse_edges(const CMShape& shape,
                                                      const std::vector<IndexC>& all) {
    std::vector<std::pair<IndexC, IndexC>> edges;
    for (const IndexC& c : all)
        for (const IndexC& cp : all) {
            if (c == cp || !leq_C(shape, cp, c)) continue;
            bool covering = true;
            for (const IndexC& mid : all) {
                if (mid == c || mid == cp) continue;
                if (leq_C(shape, cp, mid) && leq_C(shape, mid, c)) { covering = false; break; }
            }
            if (covering) edges.push_back({c, cp});
        }
    return edges;
}

int conjectural_dim(const CMShape& shape, const IndexC& c) {
    int total = 0;
    for (size_t i = 0; i < shape.legs.size(); ++i) {
        auto [a, b] = shape.legs[i];
        int lo = std::min(a, b), hi = std::max(a, b);
        total += dim_formula(lo, hi, c.labels[i].h, c.labels[i].l);
    }
    return total;
}

} // namespace strata
