#pragma once

#include "strata/mat.hpp"

#include <functional>

namespace strata {

/// Subspace of F_q^n, stored as the canonical reduced column echelon basis.
/// Equality of subspaces is equality of representations.
struct Subspace {
    int ambient = 0;
    Mat basis; // ambient x dim, canonical form; dim may be 0

    Subspace() = default;
    Subspace(const Fq& F, int amb, const Mat& span_cols)
        : ambient(amb), basis(col_echelon(F, span_cols)) {
        if (span_cols.nr != amb) throw std::invalid_argument("Subspace: ambient mismatch");
    }

    int dim() const { return basis.nc; }
    bool operator==(const Subspace& o) const { return ambient == o.ambient && basis == o.basis; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    static Subspace zero(int amb) {
        Subspace s;
        s.ambient = amb;
        s.basis = Mat(amb, 0);
        return s;
    }
    static Subspace full(const Fq& F, int amb) { return Subspace(F, amb, Mat::identity(amb)); }
};

bool contains(const Fq& F, const Subspace& U, const Mat& v);
bool subspace_leq(const Fq& F, const Subspace& U, const Subspace& W);
Subspace sum(const Fq& F, const Subspace& U, const Subspace& W);
Subspace intersect(const Fq& F, const Subspace& U, const Subspace& W);
Subspace image_under(const Fq& F, const Mat& M, const Subspace& U);
/// Preimage {x : Mx in U}.
Subspace preimage_under(const Fq& F, const Mat& M, const Subspace& U);

/// Orthogonal complement of U with respect to the bilinear form with Gram
/// matrix G on the ambient space: {v : u^T G v = 0 for all u in U}.
Subspace orthogonal_in(const Fq& F, const Mat& G, const Subspace& U, int ambient);

/// Enumerates all d-dimensional subspaces of F_q^n in a deterministic order
/// (echelon frames); calls fn for each.  Returns false if fn aborted.
bool enumerate_subspaces(const Fq& F, int n, int d,
                         const std::function<bool(const Subspace&)>& fn);

/// Enumerates d-dimensional subspaces L of the column span of C (n x u, full
/// column rank) that are totally isotropic for the form g (u x u Gram in
/// C-coordinates).  fn receives the basis in ambient coordinates (C * columns).
bool enumerate_isotropic_in(const Fq& F, const Mat& C, const Mat& g, int d,
                            const std::function<bool(const Mat&)>& fn);

} // namespace strata
