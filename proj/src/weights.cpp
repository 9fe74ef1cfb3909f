#include "strata/weights.hpp"

#include <algorithm>
#include <stdexcept>

namespace strata {

Weight make_weight(std::vector<int> k, std::vector<int> l, int r) {
    for (size_t i = 1; i < k.size(); ++i)
        if (k[i - 1] < k[i]) throw std::invalid_argument("weight: k not weakly decreasing");
    for (size_t i = 1; i < l.size(); ++i)
        if (l[i - 1] < l[i]) throw std::invalid_argument("weight: l not weakly decreasing");
    return Weight{std::move(k), std::move(l), r};
}

bool dominant(const std::vector<int>& v) {
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i - 1] < v[i]) return false;
    return true;
}

bool criterion_indexes(const Weight& w, int h) {
    int a = static_cast<int>(w.k.size()), b = static_cast<int>(w.l.size());
    if (h < 0 || h >= a) throw std::invalid_argument("criterion_indexes: need 0 <= h < a");
    for (int v : w.k) {
        int mult = 0;
        for (int x : w.k)
            if (x == v) ++mult;
        if (mult < a - h) continue;
        int above = 0;
        for (int y : w.l)
            if (y >= v) ++above;
        if (above >= b - h) return true;
    }
    return false;
}

bool criterion_single_bound(const Weight& w, int h) {
    int a = static_cast<int>(w.k.size()), b = static_cast<int>(w.l.size());
    if (h < 0 || h >= a) throw std::invalid_argument("criterion_single_bound: need 0 <= h < a");
    // Bound l_{b-h+1}; at h = 0 the index overflows and is clamped to l_b,
    // where the predicate coincides with criterion_indexes.
    int bound = w.l[std::min(b - h, b - 1)];
    for (int v : w.k) {
        int mult = 0;
        for (int x : w.k)
            if (x == v) ++mult;
        if (mult >= a - h && v <= bound) return true;
    }
    return false;
}

namespace {

// All permutations of {0..n-1} that increase on the first `cut` positions and
// on the rest: choose the first block as a subset.
std::vector<std::vector<int>> block_increasing_perms(int n, int cut) {
    std::vector<std::vector<int>> out;
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::vector<int> mask(n, 0);
    std::fill(mask.begin(), mask.begin() + cut, 1);
    std::sort(mask.begin(), mask.end());
    // Enumerate all subsets of size cut via combinations.
    std::vector<int> comb(cut);
    for (int i = 0; i < cut; ++i) comb[i] = i;
    auto emit = [&]() {
        std::vector<int> perm;
        std::vector<char> used(n, 0);
        for (int c : comb) { perm.push_back(c); used[c] = 1; }
        for (int i = 0; i < n; ++i)
            if (!used[i]) perm.push_back(i);
        out.push_back(perm);
    };
    if (cut == 0) {
        emit();
        return out;
    }
    for (;;) {
        emit();
        int i = cut - 1;
        while (i >= 0 && comb[i] == n - cut + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < cut; ++j) comb[j] = comb[j - 1] + 1;
    }
    return out;
}

} // namespace

std::vector<PWElement> enumerate_PW(int a, int b, int h) {
    if (h < 0 || h > a || h > b) throw std::invalid_argument("enumerate_PW: bad h");
    auto w1s = block_increasing_perms(a, h);
    auto w2s = block_increasing_perms(b, b - h);
    std::vector<PWElement> out;
    for (const auto& w1 : w1s)
        for (const auto& w2 : w2s) out.push_back(PWElement{w1, w2});
    return out;
}

bool pw_weight_dominant(const Weight& w, int h, const PWElement& e) {
    int a = static_cast<int>(w.k.size()), b = static_cast<int>(w.l.size());
    // Block 0: -k over w1(1..h); block 1: -k over w1(h+1..a).
    std::vector<int> b0, b1, b2, b3;
    for (int i = 0; i < h; ++i) b0.push_back(-w.k[e.w1[i]]);
    for (int i = h; i < a; ++i) b1.push_back(-w.k[e.w1[i]]);
    // l-side: the dual reverses; selected indexes are traversed in reverse.
    for (int i = b - h - 1; i >= 0; --i) b2.push_back(-w.l[e.w2[i]]);
    for (int i = b - 1; i >= b - h; --i) b3.push_back(-w.l[e.w2[i]]);
    std::vector<int> mid = b1;
    mid.insert(mid.end(), b2.begin(), b2.end());
    return dominant(b0) && dominant(mid) && dominant(b3);
}

bool orbit_dominance_oracle(const Weight& w, int h) {
    int a = static_cast<int>(w.k.size()), b = static_cast<int>(w.l.size());
    if (a > 5 || b > 5) throw std::invalid_argument("orbit_dominance_oracle: a, b <= 5");
    for (const PWElement& e : enumerate_PW(a, b, h))
        if (pw_weight_dominant(w, h, e)) return true;
    return false;
}

std::vector<SweepRow> sweep_weights(int a, int b, int h, int range, bool keep_all) {
    std::vector<SweepRow> rows;
    // Enumerate weakly decreasing tuples with entries in [-range, range].
    std::vector<std::vector<int>> ks, ls;
    std::function<void(std::vector<int>&, int, int, std::vector<std::vector<int>>&)> gen =
        [&](std::vector<int>& cur, int len, int maxv, std::vector<std::vector<int>>& out) {
            if (static_cast<int>(cur.size()) == len) {
                out.push_back(cur);
                return;
            }
            for (int v = maxv; v >= -range; --v) {
                cur.push_back(v);
                gen(cur, len, v, out);
                cur.pop_back();
            }
        };
    std::vector<int> cur;
    gen(cur, a, range, ks);
    cur.clear();
    gen(cur, b, range, ls);
    for (const auto& k : ks)
        for (const auto& l : ls) {
            Weight w{k, l, 0};
            bool crit = criterion_indexes(w, h);
            bool orac = orbit_dominance_oracle(w, h);
            bool violation = !crit && orac;
            if (keep_all || violation) rows.push_back(SweepRow{k, l, h, crit, orac});
        }
    return rows;
}

} // namespace strata
