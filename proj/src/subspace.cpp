#include "strata/subspace.hpp"

#include <stdexcept>

namespace strata {

bool contains(const Fq& F, const Subspace& U, const Mat& v) {
    Mat x;
    return solve_matrix(F, U.basis, v, x) && mat_mul(F, U.basis, x) == v;
}

bool subspace_leq(const Fq& F, const Subspace& U, const Subspace& W) {
    if (U.ambient != W.ambient) throw std::invalid_argument("subspace_leq: ambient mismatch");
    if (U.dim() > W.dim()) return false;
    return contains(F, W, U.basis);
}

Subspace sum(const Fq& F, const Subspace& U, const Subspace& W) {
    if (U.ambient != W.ambient) throw std::invalid_argument("sum: ambient mismatch");
    return Subspace(F, U.ambient, hconcat(U.basis, W.basis));
}

Subspace intersect(const Fq& F, const Subspace& U, const Subspace& W) {
    if (U.ambient != W.ambient) throw std::invalid_argument("intersect: ambient mismatch");
    if (U.dim() == 0 || W.dim() == 0) return Subspace::zero(U.ambient);
    // Kernel of [B_U | -B_W]; the U-block of each kernel vector gives a point
    // of the intersection.
    Mat K = nullspace(F, hconcat(U.basis, mat_neg(F, W.basis)));
    Mat span(U.ambient, K.nc);
    for (int c = 0; c < K.nc; ++c) {
        Mat coeff(U.dim(), 1);
        for (int i = 0; i < U.dim(); ++i) coeff.at(i, 0) = K.at(i, c);
        Mat v = mat_mul(F, U.basis, coeff);
        for (int i = 0; i < U.ambient; ++i) span.at(i, c) = v.at(i, 0);
    }
    return Subspace(F, U.ambient, span);
}

Subspace image_under(const Fq& F, const Mat& M, const Subspace& U) {
    if (M.nc != U.ambient) throw std::invalid_argument("image_under: shape mismatch");
    return Subspace(F, M.nr, mat_mul(F, M, U.basis));
}

Subspace preimage_under(const Fq& F, const Mat& M, const Subspace& U) {
    if (M.nr != U.ambient) throw std::invalid_argument("preimage_under: shape mismatch");
    // {x : Mx in span(B)} = kernel of (annihilator of B) * M.
    Mat ann = left_nullspace(F, U.basis); // rows annihilate the span
    if (ann.nr == 0) return Subspace::full(F, M.nc);
    return Subspace(F, M.nc, nullspace(F, mat_mul(F, ann, M)));
}

Subspace orthogonal_in(const Fq& F, const Mat& G, const Subspace& U, int ambient) {
    if (G.nr != ambient || G.nc != ambient) throw std::invalid_argument("orthogonal_in: bad Gram");
    if (U.dim() == 0) return Subspace::full(F, ambient);
    Mat M = mat_mul(F, transpose(U.basis), G); // dim x ambient
    return Subspace(F, ambient, nullspace(F, M));
}

namespace {

// Recursive echelon-frame enumeration of d-subspaces of F_q^n.
// Pivot rows are chosen strictly increasing; free entries range over F_q in
// rows above each pivot that are not earlier pivots.
struct SubspaceEnum {
    const Fq& F;
    int n, d;
    const std::function<bool(const Subspace&)>& fn;
    Mat cols;              // n x d, filled left to right
    std::vector<int> pivots;

    SubspaceEnum(const Fq& F_, int n_, int d_, const std::function<bool(const Subspace&)>& f)
        : F(F_), n(n_), d(d_), fn(f), cols(n_, d_) {}

    bool run() { return rec(0, 0); }

    bool rec(int c, int minPivot) {
        if (c == d) {
            // The frame determines the subspace uniquely, but the canonical
            // representation is the reduced column echelon form.
            Subspace s;
            s.ambient = n;
            s.basis = col_echelon(F, cols);
            return fn(s);
        }
        for (int p = minPivot; p <= n - (d - c); ++p) {
            // Free entries: rows < p not equal to earlier pivots.
            std::vector<int> freeRows;
            for (int r = 0; r < p; ++r) {
                bool isPiv = false;
                for (int pp : pivots)
                    if (pp == r) { isPiv = true; break; }
                if (!isPiv) freeRows.push_back(r);
            }
            for (int r = 0; r < n; ++r) cols.at(r, c) = 0;
            cols.at(p, c) = 1;
            pivots.push_back(p);
            if (!fill(c, p, freeRows, 0)) return false;
            pivots.pop_back();
        }
        return true;
    }

    bool fill(int c, int p, const std::vector<int>& freeRows, size_t idx) {
        if (idx == freeRows.size()) return rec(c + 1, p + 1);
        for (int v = 0; v < F.q(); ++v) {
            cols.at(freeRows[idx], c) = static_cast<fqe>(v);
            if (!fill(c, p, freeRows, idx + 1)) return false;
        }
        cols.at(freeRows[idx], c) = 0;
        return true;
    }
};

// Enumeration of isotropic d-subspaces in coordinates of a u-dim space with
// Gram g; isotropy checked as columns complete.
struct IsoEnum {
    const Fq& F;
    const Mat& C;   // ambient x u
    const Mat& g;   // u x u
    int u, d;
    const std::function<bool(const Mat&)>& fn;
    Mat cols; // u x d
    std::vector<int> pivots;

    IsoEnum(const Fq& F_, const Mat& C_, const Mat& g_, int d_,
            const std::function<bool(const Mat&)>& f)
        : F(F_), C(C_), g(g_), u(C_.nc), d(d_), fn(f), cols(C_.nc, d_) {}

    bool run() { return rec(0, 0); }

    bool pair_ok(int c) const {
        // <col_c, col_j> = 0 for all j <= c (self-pairing included: matters in
        // characteristic 2 only for symmetric forms; for alternating forms it
        // is identically zero).
        for (int j = 0; j <= c; ++j) {
            fqe s = 0;
            for (int i = 0; i < u; ++i) {
                if (cols.at(i, c) == 0) continue;
                fqe row = 0;
                for (int k = 0; k < u; ++k)
                    row = F.add(row, F.mul(g.at(i, k), cols.at(k, j)));
                s = F.add(s, F.mul(cols.at(i, c), row));
            }
            if (s != 0) return false;
        }
        return true;
    }

    bool rec(int c, int minPivot) {
        if (c == d) {
            Mat amb = mat_mul(F, C, cols);
            return fn(amb);
        }
        for (int p = minPivot; p <= u - (d - c); ++p) {
            std::vector<int> freeRows;
            for (int r = 0; r < p; ++r) {
                bool isPiv = false;
                for (int pp : pivots)
                    if (pp == r) { isPiv = true; break; }
                if (!isPiv) freeRows.push_back(r);
            }
            for (int r = 0; r < u; ++r) cols.at(r, c) = 0;
            cols.at(p, c) = 1;
            pivots.push_back(p);
            if (!fill(c, p, freeRows, 0)) return false;
            pivots.pop_back();
        }
        return true;
    }

    bool fill(int c, int p, const std::vector<int>& freeRows, size_t idx) {
        if (idx == freeRows.size()) {
            if (!pair_ok(c)) return true; // prune, keep enumerating
            return rec(c + 1, p + 1);
        }
        for (int v = 0; v < F.q(); ++v) {
            cols.at(freeRows[idx], c) = static_cast<fqe>(v);
            if (!fill(c, p, freeRows, idx + 1)) return false;
        }
        cols.at(freeRows[idx], c) = 0;
        return true;
    }
};

} // namespace

bool enumerate_subspaces(const Fq& F, int n, int d,
                         const std::function<bool(const Subspace&)>& fn) {
    if (d < 0 || d > n) throw std::invalid_argument("enumerate_subspaces: bad dimension");
    if (d == 0) {
        return fn(Subspace::zero(n));
    }
    SubspaceEnum e(F, n, d, fn);
    return e.run();
}

bool enumerate_isotropic_in(const Fq& F, const Mat& C, const Mat& g, int d,
                            const std::function<bool(const Mat&)>& fn) {
    if (d == 0) return fn(Mat(C.nr, 0));
    if (d > C.nc) return true; // nothing to enumerate
    IsoEnum e(F, C, g, d, fn);
    return e.run();
}

} // namespace strata
