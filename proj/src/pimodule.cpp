#include "strata/pimodule.hpp"

#include <stdexcept>

namespace strata {

const char* form_case_name(FormCase c) {
    switch (c) {
        case FormCase::OddChar: return "odd-char";
        case FormCase::Char2Case1: return "char2-case1";
        case FormCase::Char2Case2: return "char2-case2";
    }
    return "?";
}

FormCase form_case_from_name(const std::string& s) {
    if (s == "odd-char" || s == "odd") return FormCase::OddChar;
    if (s == "char2-case1" || s == "case1") return FormCase::Char2Case1;
    if (s == "char2-case2" || s == "case2") return FormCase::Char2Case2;
    throw std::invalid_argument("unknown form case: " + s);
}

Subspace PiSpace::ker_pi() const {
    Mat B(2 * m, m);
    for (int i = 0; i < m; ++i) B.at(m + i, i) = 1;
    Subspace s;
    s.ambient = 2 * m;
    s.basis = B;
    return s;
}

Mat PiSpace::embed_f(const Mat& rows_f) const {
    if (rows_f.nr != m) throw std::invalid_argument("embed_f: need m rows");
    Mat B(2 * m, rows_f.nc);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < rows_f.nc; ++j) B.at(m + i, j) = rows_f.at(i, j);
    return B;
}

Mat PiSpace::f_part_checked(const Mat& cols) const {
    if (cols.nr != 2 * m) throw std::invalid_argument("f_part: need 2m rows");
    Mat B(m, cols.nc);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < cols.nc; ++j) {
            if (cols.at(i, j) != 0) throw std::invalid_argument("f_part: nonzero e-part");
            B.at(i, j) = cols.at(m + i, j);
        }
    return B;
}

PiSpace make_pispace(const Fq& F, int a, int b, const Mat& Q, FormCase c) {
    if (a < 0 || b < a) throw std::invalid_argument("make_pispace: need 0 <= a <= b");
    int m = a + b;
    if (Q.nr != m || Q.nc != m) throw std::invalid_argument("make_pispace: Q must be m x m");
    PiSpace S;
    S.F = &F;
    S.a = a;
    S.b = b;
    S.m = m;
    S.form_case = c;
    S.Q = Q;
    S.Pi = Mat(2 * m, 2 * m);
    for (int i = 0; i < m; ++i) S.Pi.at(m + i, i) = 1;
    S.G = Mat(2 * m, 2 * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            S.G.at(i, m + j) = F.neg(Q.at(j, i)); // <e_i, f_j> = -Q_{ji}
            S.G.at(m + i, j) = Q.at(i, j);        // <f_i, e_j> =  Q_{ij}
        }
    validate_pispace(S);
    return S;
}

PiSpace standard_space(const Fq& F, int a, int b, FormCase c) {
    int m = a + b;
    if (c == FormCase::OddChar && F.p() == 2)
        throw std::invalid_argument("standard_space: odd-char case needs p odd");
    if (c != FormCase::OddChar && F.p() != 2)
        throw std::invalid_argument("standard_space: char2 cases need p = 2");
    Mat Q(m, m);
    if (c == FormCase::OddChar) {
        for (int i = 0; i < a; ++i) {
            Q.at(i, m - a + i) = 1;
            Q.at(m - a + i, i) = 1;
        }
        for (int i = a; i < m - a; ++i) Q.at(i, i) = 1;
    } else if (c == FormCase::Char2Case1) {
        Q = Mat::identity(m);
    } else {
        if (m % 2 != 0)
            throw std::invalid_argument("standard_space: char2-case2 needs a + b even");
        for (int i = 0; i < m; i += 2) {
            Q.at(i, i + 1) = 1;
            Q.at(i + 1, i) = 1;
        }
    }
    return make_pispace(F, a, b, Q, c);
}

void validate_pispace(const PiSpace& S) {
    const Fq& F = *S.F;
    int m = S.m, n = 2 * m;
    if (!is_zero(mat_mul(F, S.Pi, S.Pi))) throw std::invalid_argument("PiSpace: Pi^2 != 0");
    if (rank(F, S.Pi) != m) throw std::invalid_argument("PiSpace: rank Pi != m");
    if (rank(F, S.G) != n) throw std::invalid_argument("PiSpace: G degenerate");
    // Alternating: zero diagonal and G^T = -G.
    for (int i = 0; i < n; ++i)
        if (S.G.at(i, i) != 0) throw std::invalid_argument("PiSpace: G has nonzero diagonal");
    if (transpose(S.G) != mat_neg(F, S.G)) throw std::invalid_argument("PiSpace: G not antisymmetric");
    // <Pi x, y> + <x, Pi y> = 0.
    Mat c = mat_add(F, mat_mul(F, transpose(S.Pi), S.G), mat_mul(F, S.G, S.Pi));
    if (!is_zero(c)) throw std::invalid_argument("PiSpace: Pi not compatible with G");
    // ker Pi totally isotropic.
    Subspace K = S.ker_pi();
    Mat KtGK = mat_mul(F, mat_mul(F, transpose(K.basis), S.G), K.basis);
    if (!is_zero(KtGK)) throw std::invalid_argument("PiSpace: ker Pi not isotropic");
    // Modified Gram symmetric invertible.
    if (transpose(S.Q) != S.Q) throw std::invalid_argument("PiSpace: Q not symmetric");
    if (rank(F, S.Q) != m) throw std::invalid_argument("PiSpace: Q degenerate");
    if (S.form_case == FormCase::Char2Case2) {
        for (int i = 0; i < m; ++i)
            if (S.Q.at(i, i) != 0)
                throw std::invalid_argument("PiSpace: case-2 form has nonzero norms");
    }
}

Subspace orthogonal_ambient(const PiSpace& S, const Subspace& W) {
    if (W.ambient != 2 * S.m) throw std::invalid_argument("orthogonal_ambient: ambient mismatch");
    return orthogonal_in(*S.F, S.G, W, 2 * S.m);
}

Subspace orthogonal_modified(const PiSpace& S, const Subspace& W) {
    const Fq& F = *S.F;
    if (!subspace_leq(F, W, S.ker_pi()))
        throw std::invalid_argument("orthogonal_modified: W not inside ker Pi");
    // Work in f-coordinates.
    Mat Wf(S.m, W.dim());
    for (int i = 0; i < S.m; ++i)
        for (int j = 0; j < W.dim(); ++j) Wf.at(i, j) = W.basis.at(S.m + i, j);
    Mat M = mat_mul(F, transpose(Wf), S.Q);
    Mat K = nullspace(F, M); // m x (m - dim W)
    Subspace res;
    res.ambient = 2 * S.m;
    res.basis = col_echelon(F, S.embed_f(K));
    return res;
}

Mat modified_gram_on(const PiSpace& S, const Subspace& W) {
    const Fq& F = *S.F;
    Mat Wf(S.m, W.dim());
    for (int i = 0; i < S.m; ++i)
        for (int j = 0; j < W.dim(); ++j) {
            if (W.basis.at(i, j) != 0)
                throw std::invalid_argument("modified_gram_on: W not inside ker Pi");
            Wf.at(i, j) = W.basis.at(S.m + i, j);
        }
    return mat_mul(F, mat_mul(F, transpose(Wf), S.Q), Wf);
}

Subspace image_under_pi(const PiSpace& S, const Subspace& U) {
    return image_under(*S.F, S.Pi, U);
}

Subspace preimage_under_pi(const PiSpace& S, const Subspace& U) {
    return preimage_under(*S.F, S.Pi, U);
}

} // namespace strata
