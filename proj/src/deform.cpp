#include "strata/deform.hpp"

#include <sstream>

namespace strata {

namespace {

RN ring_of(const FamilyPoint& fam) { return RN(*fam.S.F, fam.N); }

PMat pi_pmat(const RN& R, const PiSpace& S) { return pmat_from_mat(R, S.Pi); }
PMat g_pmat(const RN& R, const PiSpace& S) { return pmat_from_mat(R, S.G); }

// f-part of a (2m x k) PMat whose e-part must vanish.
PMat f_part(const RN& R, const PiSpace& S, const PMat& B) {
    PMat out(S.m, B.nc, R.N);
    for (int i = 0; i < S.m; ++i)
        for (int j = 0; j < B.nc; ++j) {
            if (!R.is_zero(B.at(i, j)))
                throw std::invalid_argument("f_part: nonzero e-part");
            out.at(i, j) = B.at(S.m + i, j);
        }
    return out;
}

std::vector<int> pivot_rows_of_echelon(const Mat& E) {
    std::vector<int> piv;
    for (int j = 0; j < E.nc; ++j) {
        int r = -1;
        for (int i = 0; i < E.nr; ++i)
            if (E.at(i, j) != 0) { r = i; break; }
        piv.push_back(r);
    }
    return piv;
}

// Column-normalizes a full-rank-at-0 module basis so that the pivot-row
// submatrix is the identity over R_N.  Returns the pivot row list.
std::vector<int> pivot_normalize(const RN& R, PMat& B) {
    Mat ech = col_echelon(*R.F, pmat_reduce0(B));
    std::vector<int> piv = pivot_rows_of_echelon(ech);
    PMat sub(B.nc, B.nc, R.N);
    for (int k = 0; k < B.nc; ++k)
        for (int j = 0; j < B.nc; ++j) sub.at(k, j) = B.at(piv[k], j);
    PMat inv = rn_inverse(R, sub);
    B = pmat_mul(R, B, inv);
    return piv;
}

} // namespace

void validate_family(const FamilyPoint& fam) {
    const Fq& F = *fam.S.F;
    RN R = ring_of(fam);
    int m = fam.S.m;
    if (fam.omega_b.nr != 2 * m || fam.omega_b.nc != m)
        throw std::invalid_argument("family: omega shape");
    if (fam.omega1_b.nr != 2 * m || fam.omega1_b.nc != fam.S.a)
        throw std::invalid_argument("family: omega1 shape");
    if (rank(F, pmat_reduce0(fam.omega_b)) != m)
        throw std::invalid_argument("family: omega reduction not full rank");
    if (rank(F, pmat_reduce0(fam.omega1_b)) != fam.S.a)
        throw std::invalid_argument("family: omega1 reduction not full rank");

    PMat P = pi_pmat(R, fam.S), G = g_pmat(R, fam.S);
    if (!pmat_is_zero(pmat_mul(R, P, fam.omega1_b)))
        throw FamilyConstraintError("family: Pi omega1 != 0 over R_N");
    PMat iso = pmat_mul(R, pmat_mul(R, pmat_transpose(fam.omega_b), G), fam.omega_b);
    if (!pmat_is_zero(iso)) {
        // Report the first failing order.
        int ord = R.N;
        for (int k = 0; k < R.N; ++k)
            if (!is_zero(pmat_coeff(iso, k))) { ord = k; break; }
        std::ostringstream os;
        os << "family: omega not isotropic over R_N (fails at order t^" << ord << ")";
        throw FamilyConstraintError(os.str());
    }
    PMat X;
    if (!rn_solve(R, fam.omega1_b, pmat_mul(R, P, fam.omega_b), X))
        throw FamilyConstraintError("family: Pi omega not inside omega1 over R_N");
    if (!rn_solve(R, fam.omega_b, fam.omega1_b, X))
        throw FamilyConstraintError("family: omega1 not inside omega over R_N");
    validate_point(fam.S, special_point(fam));
}

bool is_valid_family(const FamilyPoint& fam) {
    try {
        validate_family(fam);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

LMPoint special_point(const FamilyPoint& fam) {
    const Fq& F = *fam.S.F;
    LMPoint x;
    x.omega = Subspace(F, 2 * fam.S.m, pmat_reduce0(fam.omega_b));
    x.omega1 = Subspace(F, 2 * fam.S.m, pmat_reduce0(fam.omega1_b));
    return x;
}

LMPoint evaluate_at(const FamilyPoint& fam, fqe c) {
    const Fq& F = *fam.S.F;
    RN R = ring_of(fam);
    LMPoint x;
    x.omega = Subspace(F, 2 * fam.S.m, pmat_eval(R, fam.omega_b, c));
    x.omega1 = Subspace(F, 2 * fam.S.m, pmat_eval(R, fam.omega1_b, c));
    validate_point(fam.S, x);
    return x;
}

namespace {

void check_headroom(const RN& R, const PMat& M, const char* what) {
    int v = max_finite_valuation(R, M);
    if (v > R.N - 2) {
        std::ostringstream os;
        os << "truncation insufficient for " << what << ": observed valuation " << v
           << " with N = " << R.N;
        throw TruncationInsufficient(os.str());
    }
}

} // namespace

StrataPair generic_special_strata(const FamilyPoint& fam) {
    validate_family(fam);
    RN R = ring_of(fam);
    StrataPair out;
    out.special = invariants(fam.S, special_point(fam));

    PMat P = pi_pmat(R, fam.S);
    PMat PiOmega = pmat_mul(R, P, fam.omega_b);
    check_headroom(R, PiOmega, "rank of Pi on omega");
    out.generic.h = generic_rank(R, PiOmega);

    // omega2 over R_N: kernel module of (omega1 f-part)^T Q.
    PMat B1f = f_part(R, fam.S, fam.omega1_b);
    PMat M = pmat_mul(R, pmat_transpose(B1f), pmat_from_mat(R, fam.S.Q));
    PMat K = rn_kernel_fullrowrank(R, M);
    PMat J = pmat_hconcat(B1f, K);
    check_headroom(R, J, "dimension of omega1 cap omega2");
    out.generic.l = fam.S.a + fam.S.b - generic_rank(R, J);
    return out;
}

FamilyPoint constant_family(const PiSpace& S, const LMPoint& x, int N) {
    validate_point(S, x);
    RN R(*S.F, N);
    FamilyPoint fam;
    fam.S = S;
    fam.N = N;
    fam.omega_b = pmat_from_mat(R, x.omega.basis);
    fam.omega1_b = pmat_from_mat(R, x.omega1.basis);
    return fam;
}

namespace {

void require_val_ge1(const RN&, const PMat& M, const char* name) {
    for (const Poly& p : M.a)
        if (p[0] != 0)
            throw std::invalid_argument(std::string(name) + ": entries must lie in t*R_N");
}

} // namespace

FamilyPoint family_from_XYZ(const Fq& F, int a, int b, const PMat& X, const PMat& Y,
                            const PMat& Z, int N) {
    if (F.p() == 2) throw std::invalid_argument("family_from_XYZ: needs p odd");
    RN R(F, N);
    if (X.nr != b - a || X.nc != a || Y.nr != a || Y.nc != a || Z.nr != a || Z.nc != a)
        throw std::invalid_argument("family_from_XYZ: matrix shapes");
    require_val_ge1(R, X, "X");
    require_val_ge1(R, Y, "Y");
    require_val_ge1(R, Z, "Z");
    if (!(pmat_transpose(Z) == Z))
        throw FamilyConstraintError("family_from_XYZ: Z not symmetric");
    PMat Mconstr = pmat_add(R, pmat_add(R, Y, pmat_transpose(Y)),
                            pmat_mul(R, pmat_transpose(X), X));
    PMat MZ = pmat_mul(R, Mconstr, Z);
    if (!pmat_is_zero(MZ)) {
        int ord = N;
        for (int k = 0; k < N; ++k)
            if (!is_zero(pmat_coeff(MZ, k))) { ord = k; break; }
        std::ostringstream os;
        os << "family_from_XYZ: (Y + Y^T + X^T X) Z != 0 (fails at order t^" << ord << ")";
        throw FamilyConstraintError(os.str());
    }

    PiSpace S = standard_space(F, a, b, FormCase::OddChar);
    int m = S.m;
    FamilyPoint fam;
    fam.S = S;
    fam.N = N;
    fam.omega1_b = PMat(2 * m, a, N);
    // f-part rows grouped (a, b-a, a): [I; X; Y].
    for (int j = 0; j < a; ++j) {
        fam.omega1_b.at(m + j, j) = R.one();
        for (int i = 0; i < b - a; ++i) fam.omega1_b.at(m + a + i, j) = X.at(i, j);
        for (int i = 0; i < a; ++i) fam.omega1_b.at(m + b + i, j) = Y.at(i, j);
    }
    fam.omega_b = PMat(2 * m, m, N);
    for (int j = 0; j < a; ++j)
        for (int i = 0; i < 2 * m; ++i) fam.omega_b.at(i, j) = fam.omega1_b.at(i, j);
    // Columns a..b-1: [0; I; -X^T] in f-coordinates.
    for (int j = 0; j < b - a; ++j) {
        fam.omega_b.at(m + a + j, a + j) = R.one();
        for (int i = 0; i < a; ++i) fam.omega_b.at(m + b + i, a + j) = R.neg(X.at(j, i));
    }
    // Columns b..m-1: e-part [Z; XZ; YZ], f-part unit at row b + j.
    PMat XZ = pmat_mul(R, X, Z), YZ = pmat_mul(R, Y, Z);
    for (int j = 0; j < a; ++j) {
        for (int i = 0; i < a; ++i) fam.omega_b.at(i, b + j) = Z.at(i, j);
        for (int i = 0; i < b - a; ++i) fam.omega_b.at(a + i, b + j) = XZ.at(i, j);
        for (int i = 0; i < a; ++i) fam.omega_b.at(b + i, b + j) = YZ.at(i, j);
        fam.omega_b.at(m + b + j, b + j) = R.one();
    }
    validate_family(fam);
    return fam;
}

PiSpace stratum_frame(const Fq& F, int a, int b, int h, int l) {
    if (!(0 <= h && h <= l && l <= a && a <= b))
        throw std::invalid_argument("stratum_frame: label out of range");
    int m = a + b;
    // Block sizes (h, l-h, a-l, b-l, l-h, h); 1 pairs 6, 2 pairs 5, identity
    // on 3 and 4.
    Mat Q(m, m);
    int o1 = 0, o2 = h, o3 = l, o4 = a, o5 = a + b - l, o6 = a + b - h;
    for (int i = 0; i < h; ++i) {
        Q.at(o1 + i, o6 + i) = 1;
        Q.at(o6 + i, o1 + i) = 1;
    }
    for (int i = 0; i < l - h; ++i) {
        Q.at(o2 + i, o5 + i) = 1;
        Q.at(o5 + i, o2 + i) = 1;
    }
    for (int i = 0; i < a - l; ++i) Q.at(o3 + i, o3 + i) = 1;
    for (int i = 0; i < b - l; ++i) Q.at(o4 + i, o4 + i) = 1;
    FormCase tag = FormCase::OddChar;
    if (F.p() == 2) {
        bool diag_zero = true;
        for (int i = 0; i < m; ++i)
            if (Q.at(i, i) != 0) diag_zero = false;
        tag = diag_zero ? FormCase::Char2Case2 : FormCase::Char2Case1;
    }
    return make_pispace(F, a, b, Q, tag);
}

LMPoint stratum_base_point(const PiSpace& S, int h, int l) {
    const Fq& F = *S.F;
    int m = S.m, a = S.a, b = S.b;
    if (!(0 <= h && h <= l && l <= a))
        throw std::invalid_argument("stratum_base_point: label out of range");
    Mat B1(2 * m, a);
    for (int j = 0; j < a; ++j) B1.at(m + j, j) = 1; // f_1..f_a
    Mat B(2 * m, m);
    for (int j = 0; j < a + b - h; ++j) B.at(m + j, j) = 1; // f_1..f_{a+b-h}
    for (int j = 0; j < h; ++j) B.at(j, a + b - h + j) = 1;  // e_1..e_h
    LMPoint x;
    x.omega1 = Subspace(F, 2 * m, B1);
    x.omega = Subspace(F, 2 * m, B);
    validate_point(S, x);
    return x;
}

FamilyPoint family_general(const Fq& F, int a, int b, int h, int l, const PMat& Y2,
                           const PMat& Z, int N) {
    RN R(F, N);
    if (Y2.nr != a - l || Y2.nc != l - h || Z.nr != l - h || Z.nc != l - h)
        throw std::invalid_argument("family_general: matrix shapes");
    require_val_ge1(R, Y2, "Y2");
    require_val_ge1(R, Z, "Z");
    if (!(pmat_transpose(Z) == Z)) throw FamilyConstraintError("family_general: Z not symmetric");
    if (!pmat_is_zero(pmat_mul(R, Y2, Z)))
        throw FamilyConstraintError("family_general: Y2 Z != 0");

    PiSpace S = stratum_frame(F, a, b, h, l);
    int m = S.m;
    int o5 = a + b - l; // block-5 offset (0-indexed f rows)
    FamilyPoint fam;
    fam.S = S;
    fam.N = N;

    // omega1: f-part [I_h | lifted middle | I_{a-l}] with Y2 mixing block 3.
    fam.omega1_b = PMat(2 * m, a, N);
    for (int j = 0; j < h; ++j) fam.omega1_b.at(m + j, j) = R.one();
    for (int j = 0; j < l - h; ++j) {
        fam.omega1_b.at(m + h + j, h + j) = R.one();
        for (int k = 0; k < a - l; ++k) fam.omega1_b.at(m + l + k, h + j) = Y2.at(k, j);
    }
    for (int j = 0; j < a - l; ++j) fam.omega1_b.at(m + l + j, l + j) = R.one();

    fam.omega_b = PMat(2 * m, m, N);
    // Columns 0..a-1: omega1.
    for (int j = 0; j < a; ++j)
        for (int i = 0; i < 2 * m; ++i) fam.omega_b.at(i, j) = fam.omega1_b.at(i, j);
    // Columns a..a+(b-l)-1: f-block 4.
    for (int j = 0; j < b - l; ++j) fam.omega_b.at(m + a + j, a + j) = R.one();
    // Columns a+(b-l)..a+(b-l)+h-1: e_1..e_h.
    int c0 = a + (b - l);
    for (int j = 0; j < h; ++j) fam.omega_b.at(j, c0 + j) = R.one();
    // Columns c1..c1+(l-h)-1: v_j = f_{o5+j} + sum_i Z_{ij} w_i, where
    // w_i = e_{h+i} + sum_k Y2_{ki} e_{l+k}.
    int c1 = c0 + h;
    for (int j = 0; j < l - h; ++j) {
        fam.omega_b.at(m + o5 + j, c1 + j) = R.one();
        for (int i = 0; i < l - h; ++i) {
            const Poly& z = Z.at(i, j);
            if (R.is_zero(z)) continue;
            fam.omega_b.at(h + i, c1 + j) = R.add(fam.omega_b.at(h + i, c1 + j), z);
            for (int k = 0; k < a - l; ++k)
                fam.omega_b.at(l + k, c1 + j) =
                    R.add(fam.omega_b.at(l + k, c1 + j), R.mul(Y2.at(k, i), z));
        }
    }
    validate_family(fam);
    return fam;
}

FamilyPoint family_omega1_only(const Fq& F, int a, int b, int h, int l, const PMat& D, int N) {
    RN R(F, N);
    if (D.nr != a + b - h || D.nc != a - h)
        throw std::invalid_argument("family_omega1_only: D shape");
    require_val_ge1(R, D, "D");
    PiSpace S = stratum_frame(F, a, b, h, l);
    LMPoint base = stratum_base_point(S, h, l);
    int m = S.m;
    FamilyPoint fam;
    fam.S = S;
    fam.N = N;
    fam.omega_b = pmat_from_mat(R, base.omega.basis);
    fam.omega1_b = pmat_from_mat(R, base.omega1.basis);
    for (int j = 0; j < a - h; ++j)
        for (int r = 0; r < a + b - h; ++r)
            fam.omega1_b.at(m + r, h + j) = R.add(fam.omega1_b.at(m + r, h + j), D.at(r, j));
    validate_family(fam);
    return fam;
}

// ---------------------------------------------------------------------------
// Tangent space.

int tangent_dim(const PiSpace& S, const LMPoint& x) {
    const Fq& F = *S.F;
    validate_point(S, x);
    int n = 2 * S.m, m = S.m, a = S.a;
    // The echelon chart needs the canonical form; recanonicalize in case the
    // bases were assembled directly.
    Mat B = col_echelon(F, x.omega.basis);
    Mat B1 = col_echelon(F, x.omega1.basis);

    std::vector<int> pivB = pivot_rows_of_echelon(B);
    std::vector<int> pivB1 = pivot_rows_of_echelon(B1);
    std::vector<char> isPivB(n, 0), isPivB1(n, 0);
    for (int r : pivB) isPivB[r] = 1;
    for (int r : pivB1) isPivB1[r] = 1;
    std::vector<int> freeB, freeB1;
    for (int r = 0; r < n; ++r) {
        if (!isPivB[r]) freeB.push_back(r);
        if (!isPivB1[r]) freeB1.push_back(r);
    }
    std::vector<int> posB(n, -1), posB1(n, -1);
    for (size_t i = 0; i < freeB.size(); ++i) posB[freeB[i]] = static_cast<int>(i);
    for (size_t i = 0; i < freeB1.size(); ++i) posB1[freeB1[i]] = static_cast<int>(i);

    int nC = static_cast<int>(freeB.size()) * m;
    int nC1 = static_cast<int>(freeB1.size()) * a;
    int nunk = nC + nC1;
    auto idxC = [&](int r, int j) { return posB[r] * m + j; };
    auto idxC1 = [&](int r, int j) { return nC + posB1[r] * a + j; };

    std::vector<std::vector<fqe>> rows;
    auto new_row = [&]() -> std::vector<fqe>& {
        rows.emplace_back(nunk, 0);
        return rows.back();
    };

    // (1) Pi C1 = 0.
    for (int j = 0; j < a; ++j)
        for (int i = 0; i < n; ++i) {
            auto& row = new_row();
            bool nonzero = false;
            for (int r : freeB1) {
                fqe v = S.Pi.at(i, r);
                if (v != 0) { row[idxC1(r, j)] = F.add(row[idxC1(r, j)], v); nonzero = true; }
            }
            if (!nonzero) rows.pop_back();
        }

    // (2) omega1 stays inside omega: N_B (C1_j - C u_j) = 0.
    Mat NB = left_nullspace(F, B);
    Mat U;
    if (!solve_matrix(F, B, B1, U)) throw std::logic_error("tangent: containment solve failed");
    for (int j = 0; j < a; ++j)
        for (int v = 0; v < NB.nr; ++v) {
            auto& row = new_row();
            for (int r : freeB1) row[idxC1(r, j)] = F.add(row[idxC1(r, j)], NB.at(v, r));
            for (int r : freeB)
                for (int k = 0; k < m; ++k) {
                    fqe c = F.mul(NB.at(v, r), U.at(k, j));
                    if (c != 0) row[idxC(r, k)] = F.sub(row[idxC(r, k)], c);
                }
        }

    // (3) Pi omega stays inside omega1: N_B1 (Pi C_j - C1 w_j) = 0.
    Mat NB1 = left_nullspace(F, B1);
    Mat W;
    if (!solve_matrix(F, B1, mat_mul(F, S.Pi, B), W))
        throw std::logic_error("tangent: Pi-containment solve failed");
    Mat NB1Pi = mat_mul(F, NB1, S.Pi);
    for (int j = 0; j < m; ++j)
        for (int v = 0; v < NB1.nr; ++v) {
            auto& row = new_row();
            for (int r : freeB) row[idxC(r, j)] = F.add(row[idxC(r, j)], NB1Pi.at(v, r));
            for (int r : freeB1)
                for (int k = 0; k < a; ++k) {
                    fqe c = F.mul(NB1.at(v, r), W.at(k, j));
                    if (c != 0) row[idxC1(r, k)] = F.sub(row[idxC1(r, k)], c);
                }
        }

    // (4) isotropy to first order: B_i^T G C_j + C_i^T G B_j = 0, i < j.
    Mat BtG = mat_mul(F, transpose(B), S.G);
    Mat GB = mat_mul(F, S.G, B);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            auto& row = new_row();
            for (int r : freeB) {
                fqe c1 = BtG.at(i, r);
                if (c1 != 0) row[idxC(r, j)] = F.add(row[idxC(r, j)], c1);
                fqe c2 = GB.at(r, j);
                if (c2 != 0) row[idxC(r, i)] = F.add(row[idxC(r, i)], c2);
            }
        }

    Mat A(static_cast<int>(rows.size()), nunk);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < nunk; ++j) A.at(static_cast<int>(i), j) = rows[i][j];
    return nunk - rank(F, A);
}

// ---------------------------------------------------------------------------
// Square-zero lifting.

LiftResult lift_step(const FamilyPoint& fam) {
    validate_family(fam);
    const Fq& F = *fam.S.F;
    int n = 2 * fam.S.m, m = fam.S.m, a = fam.S.a, N = fam.N;
    RN R(F, N);
    RN Rx(F, N + 1);

    PMat Bn = fam.omega_b, B1n = fam.omega1_b;
    std::vector<int> pivB = pivot_normalize(R, Bn);
    std::vector<int> pivB1 = pivot_normalize(R, B1n);
    std::vector<char> isPivB(n, 0), isPivB1(n, 0);
    for (int r : pivB) isPivB[r] = 1;
    for (int r : pivB1) isPivB1[r] = 1;
    std::vector<int> freeB, freeB1;
    for (int r = 0; r < n; ++r) {
        if (!isPivB[r]) freeB.push_back(r);
        if (!isPivB1[r]) freeB1.push_back(r);
    }
    std::vector<int> posB(n, -1), posB1(n, -1);
    for (size_t i = 0; i < freeB.size(); ++i) posB[freeB[i]] = static_cast<int>(i);
    for (size_t i = 0; i < freeB1.size(); ++i) posB1[freeB1[i]] = static_cast<int>(i);

    int nD = static_cast<int>(freeB.size()) * m;
    int nD1 = static_cast<int>(freeB1.size()) * a;
    int nunk = nD + nD1;
    auto idxD = [&](int r, int j) { return posB[r] * m + j; };
    auto idxD1 = [&](int r, int j) { return nD + posB1[r] * a + j; };

    Mat B0 = pmat_reduce0(Bn), B10 = pmat_reduce0(B1n);

    // Defects at order t^N, computed over R_{N+1}.
    PMat Be = pmat_retrunc(Bn, N + 1), B1e = pmat_retrunc(B1n, N + 1);
    PMat Gx = pmat_from_mat(Rx, fam.S.G), Px = pmat_from_mat(Rx, fam.S.Pi);
    Mat delta = pmat_coeff(pmat_mul(Rx, pmat_mul(Rx, pmat_transpose(Be), Gx), Be), N);

    PMat U, Wc;
    if (!rn_solve(R, B1n, pmat_mul(R, pmat_from_mat(R, fam.S.Pi), Bn), U))
        throw std::logic_error("lift_step: base containment failed");
    if (!rn_solve(R, Bn, B1n, Wc)) throw std::logic_error("lift_step: base containment failed");
    Mat U0 = pmat_reduce0(U), W0 = pmat_reduce0(Wc);
    Mat rho = pmat_coeff(pmat_sub(Rx, pmat_mul(Rx, Px, Be),
                                  pmat_mul(Rx, B1e, pmat_retrunc(U, N + 1))), N);
    Mat rho2 = pmat_coeff(pmat_sub(Rx, B1e, pmat_mul(Rx, Be, pmat_retrunc(Wc, N + 1))), N);

    std::vector<std::vector<fqe>> rows;
    std::vector<fqe> rhs;
    auto new_row = [&](fqe c) -> std::vector<fqe>& {
        rows.emplace_back(nunk, 0);
        rhs.push_back(c);
        return rows.back();
    };

    // (a) Pi D1 = 0.
    for (int j = 0; j < a; ++j)
        for (int i = 0; i < n; ++i) {
            auto& row = new_row(0);
            bool nz = false;
            for (int r : freeB1) {
                fqe v = fam.S.Pi.at(i, r);
                if (v != 0) { row[idxD1(r, j)] = F.add(row[idxD1(r, j)], v); nz = true; }
            }
            if (!nz) rows.pop_back(), rhs.pop_back();
        }

    // (b) delta + B0^T G D + D^T G B0 = 0, entries i < j.
    Mat BtG = mat_mul(F, transpose(B0), fam.S.G);
    Mat GB = mat_mul(F, fam.S.G, B0);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            auto& row = new_row(F.neg(delta.at(i, j)));
            for (int r : freeB) {
                fqe c1 = BtG.at(i, r);
                if (c1 != 0) row[idxD(r, j)] = F.add(row[idxD(r, j)], c1);
                fqe c2 = GB.at(r, j);
                if (c2 != 0) row[idxD(r, i)] = F.add(row[idxD(r, i)], c2);
            }
        }

    // (c) N_{B10} (Pi D - D1 U0 + rho) = 0.
    Mat NB1 = left_nullspace(F, B10);
    Mat NB1Pi = mat_mul(F, NB1, fam.S.Pi);
    Mat NB1rho = mat_mul(F, NB1, rho);
    for (int j = 0; j < m; ++j)
        for (int v = 0; v < NB1.nr; ++v) {
            auto& row = new_row(F.neg(NB1rho.at(v, j)));
            for (int r : freeB) row[idxD(r, j)] = F.add(row[idxD(r, j)], NB1Pi.at(v, r));
            for (int r : freeB1)
                for (int k = 0; k < a; ++k) {
                    fqe c = F.mul(NB1.at(v, r), U0.at(k, j));
                    if (c != 0) row[idxD1(r, k)] = F.sub(row[idxD1(r, k)], c);
                }
        }

    // (d) N_{B0} (D1 - D W0 + rho2) = 0.
    Mat NB = left_nullspace(F, B0);
    Mat NBrho2 = mat_mul(F, NB, rho2);
    for (int j = 0; j < a; ++j)
        for (int v = 0; v < NB.nr; ++v) {
            auto& row = new_row(F.neg(NBrho2.at(v, j)));
            for (int r : freeB1) row[idxD1(r, j)] = F.add(row[idxD1(r, j)], NB.at(v, r));
            for (int r : freeB)
                for (int k = 0; k < m; ++k) {
                    fqe c = F.mul(NB.at(v, r), W0.at(k, j));
                    if (c != 0) row[idxD(r, k)] = F.sub(row[idxD(r, k)], c);
                }
        }

    Mat A(static_cast<int>(rows.size()), nunk);
    Mat c(static_cast<int>(rows.size()), 1);
    for (size_t i = 0; i < rows.size(); ++i) {
        for (int j = 0; j < nunk; ++j) A.at(static_cast<int>(i), j) = rows[i][j];
        c.at(static_cast<int>(i), 0) = rhs[i];
    }
    LiftResult res;
    Mat sol;
    if (solve_matrix(F, A, c, sol) && mat_mul(F, A, sol) == c) {
        res.solvable = true;
        res.solution_dim = nunk - rank(F, A);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Obstruction witnesses.

FamilyPoint nonsmooth_witness_family(const Fq& F, int a, int b, int h, int l) {
    if (F.p() == 2) throw std::invalid_argument("nonsmooth_witness_family: needs p odd");
    if (!(0 <= h && h < l && l <= a && a <= b))
        throw std::invalid_argument("nonsmooth_witness_family: needs h < l");
    int m = a + b, N = 2;
    // Frame with modified Gram [[0,0,I_l],[0,I_{m-2l},0],[I_l,0,0]].
    Mat Q(m, m);
    for (int i = 0; i < l; ++i) {
        Q.at(i, m - l + i) = 1;
        Q.at(m - l + i, i) = 1;
    }
    for (int i = l; i < m - l; ++i) Q.at(i, i) = 1;
    PiSpace S = make_pispace(F, a, b, Q, FormCase::OddChar);
    RN R(F, N);
    FamilyPoint fam;
    fam.S = S;
    fam.N = N;
    // omega1: f_1 + t f_{m-l+1}, f_2, ..., f_a.
    fam.omega1_b = PMat(2 * m, a, N);
    fam.omega1_b.at(m + 0, 0) = R.one();
    fam.omega1_b.at(m + (m - l), 0) = R.t_power(1);
    for (int j = 1; j < a; ++j) fam.omega1_b.at(m + j, j) = R.one();
    // omega: omega1, f_j (a+1..m-h, j != m-l+1), f_{m-l+1} + t e_1,
    // e_{l-h+1}..e_l.
    fam.omega_b = PMat(2 * m, m, N);
    int col = 0;
    for (int j = 0; j < a; ++j, ++col)
        for (int i = 0; i < 2 * m; ++i) fam.omega_b.at(i, col) = fam.omega1_b.at(i, j);
    for (int j = a; j < m - h; ++j) {
        if (j == m - l) continue; // 0-indexed f_{m-l+1}
        fam.omega_b.at(m + j, col) = R.one();
        ++col;
    }
    fam.omega_b.at(m + (m - l), col) = R.one();
    fam.omega_b.at(0, col) = R.t_power(1);
    ++col;
    for (int j = l - h; j < l; ++j, ++col) fam.omega_b.at(j, col) = R.one();
    validate_family(fam);
    return fam;
}

FamilyPoint char2_obstruction_family(const Fq& F, int b) {
    if (F.p() != 2) throw std::invalid_argument("char2_obstruction_family: needs p = 2");
    if (b < 1) throw std::invalid_argument("char2_obstruction_family: b >= 1");
    PiSpace S = standard_space(F, 1, b, FormCase::Char2Case1);
    int m = S.m, N = 2;
    RN R(F, N);
    FamilyPoint fam;
    fam.S = S;
    fam.N = N;
    // omega1: f_1 + f_2 + t f_1.
    fam.omega1_b = PMat(2 * m, 1, N);
    fam.omega1_b.at(m + 0, 0) = R.add(R.one(), R.t_power(1));
    fam.omega1_b.at(m + 1, 0) = R.one();
    // omega: omega1, f_3..f_m, e_1 + e_2 + t e_1.
    fam.omega_b = PMat(2 * m, m, N);
    for (int i = 0; i < 2 * m; ++i) fam.omega_b.at(i, 0) = fam.omega1_b.at(i, 0);
    for (int j = 2; j < m; ++j) fam.omega_b.at(m + j, j - 1) = R.one();
    fam.omega_b.at(0, m - 1) = R.add(R.one(), R.t_power(1));
    fam.omega_b.at(1, m - 1) = R.one();
    validate_family(fam);
    return fam;
}

// ---------------------------------------------------------------------------
// Closure witnesses and random families.

namespace {

Poly rand_tpoly(const RN& R, std::mt19937_64& rng) {
    Poly p = R.zero();
    std::uniform_int_distribution<int> d(0, R.F->q() - 1);
    for (int i = 1; i < R.N; ++i) p[i] = static_cast<fqe>(d(rng));
    return p;
}

PMat rand_tmat(const RN& R, int nr, int nc, std::mt19937_64& rng) {
    PMat M(nr, nc, R.N);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) M.at(i, j) = rand_tpoly(R, rng);
    return M;
}

PMat rand_sym_tmat(const RN& R, int n, std::mt19937_64& rng) {
    PMat M(n, n, R.N);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Poly p = rand_tpoly(R, rng);
            M.at(i, j) = p;
            M.at(j, i) = p;
        }
    return M;
}

// Samples a random solution of the F_q-linear condition map(v) = 0 where v
// packs `nunk` coefficient unknowns and map is R_N-linear in them.
std::vector<fqe> sample_kernel(const Fq& F, int nunk,
                               const std::function<std::vector<fqe>(const std::vector<fqe>&)>& map,
                               std::mt19937_64& rng) {
    if (nunk == 0) return {};
    std::vector<fqe> probe(nunk, 0);
    std::vector<fqe> base = map(probe);
    int nout = static_cast<int>(base.size());
    Mat A(nout, nunk);
    for (int j = 0; j < nunk; ++j) {
        probe.assign(nunk, 0);
        probe[j] = 1;
        std::vector<fqe> out = map(probe);
        for (int i = 0; i < nout; ++i) A.at(i, j) = out[i];
    }
    Mat K = nullspace(F, A);
    std::vector<fqe> v(nunk, 0);
    std::uniform_int_distribution<int> d(0, F.q() - 1);
    for (int c = 0; c < K.nc; ++c) {
        fqe coef = static_cast<fqe>(d(rng));
        if (coef == 0) continue;
        for (int r = 0; r < nunk; ++r) v[r] = F.add(v[r], F.mul(coef, K.at(r, c)));
    }
    return v;
}

// Packs/unpacks a symmetric (n x n) t-multiple matrix into coefficients.
PMat unpack_sym(const RN& R, int n, const std::vector<fqe>& v) {
    PMat Z(n, n, R.N);
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int c = 1; c < R.N; ++c) {
                Z.at(i, j)[c] = v[k];
                Z.at(j, i)[c] = v[k];
                ++k;
            }
    return Z;
}

PMat unpack_full(const RN& R, int nr, int nc, const std::vector<fqe>& v) {
    PMat M(nr, nc, R.N);
    int k = 0;
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j)
            for (int c = 1; c < R.N; ++c) M.at(i, j)[c] = v[k++];
    return M;
}

std::vector<fqe> flatten(const PMat& M) {
    std::vector<fqe> out;
    for (const Poly& p : M.a)
        for (fqe c : p) out.push_back(c);
    return out;
}

} // namespace

WitnessResult closure_witness_search(const Fq& F, int a, int b, StratumLabel cs,
                                     StratumLabel cg, int N, long long budget,
                                     uint64_t seed) {
    if (F.p() == 2) throw std::invalid_argument("closure_witness_search: needs p odd");
    if (!(0 <= cs.h && cs.h <= cs.l && cs.l <= a) || !(0 <= cg.h && cg.h <= cg.l && cg.l <= a))
        throw std::invalid_argument("closure_witness_search: label out of range");
    if (!stratum_leq(cs, cg))
        throw std::invalid_argument("closure_witness_search: labels violate the closure order");

    RN R(F, N);
    WitnessResult res;
    auto accept = [&](FamilyPoint&& fam, const char* route) -> bool {
        StrataPair p = generic_special_strata(fam);
        if (p.special == cs && p.generic == cg) {
            res.found = true;
            res.family = std::move(fam);
            res.pair = p;
            res.route = route;
            return true;
        }
        return false;
    };

    // Constant family.
    if (cs == cg) {
        PiSpace S = stratum_frame(F, a, b, cs.h, cs.l);
        if (accept(constant_family(S, stratum_base_point(S, cs.h, cs.l), N), "constant"))
            return res;
    }

    // Most degenerate base stratum: diagonal monomial (X, Y, Z).
    if (cs.h == 0 && cs.l == a) {
        PMat X(b - a, a, N), Y(a, a, N), Z(a, a, N);
        for (int i = 0; i < cg.h; ++i) Z.at(i, i) = R.t_power(1);
        for (int i = cg.l; i < a; ++i) Y.at(i, i) = R.t_power(1);
        if (accept(family_from_XYZ(F, a, b, X, Y, Z, N), "xyz")) return res;
    }

    // General base stratum with monomial (Y2, Z); needs rank Y2 <= a - l.
    {
        int r = cg.h - cs.h, s = cg.l - cs.h;
        int rkY2 = (cs.l - cs.h) - s;
        if (r >= 0 && s >= r && rkY2 <= a - cs.l) {
            PMat Z(cs.l - cs.h, cs.l - cs.h, N), Y2(a - cs.l, cs.l - cs.h, N);
            for (int i = 0; i < r; ++i) Z.at(i, i) = R.t_power(1);
            for (int i = 0; i < rkY2; ++i) Y2.at(i, s + i) = R.t_power(1);
            if (accept(family_general(F, a, b, cs.h, cs.l, Y2, Z, N), "general")) return res;
        }
    }

    // h-preserving deformation of omega1 only.
    if (cg.h == cs.h) {
        int k = cs.l - cg.l;
        int o5 = a + b - cs.l; // block-5 offset in f rows
        PMat D(a + b - cs.h, a - cs.h, N);
        // Pair the i-th middle generator with its dual partner.
        for (int i = 0; i < k; ++i) D.at(o5 + i, i) = R.t_power(1);
        if (accept(family_omega1_only(F, a, b, cs.h, cs.l, D, N), "omega1")) return res;
    }

    // Seeded random fallback over the same three shapes.
    std::mt19937_64 rng(seed);
    for (long long it = 0; it < budget; ++it) {
        try {
            int shape = static_cast<int>(rng() % 3);
            if (shape == 0 && cs.h == 0 && cs.l == a) {
                PMat X = rand_tmat(R, b - a, a, rng);
                PMat Y = rand_tmat(R, a, a, rng);
                PMat M = pmat_add(R, pmat_add(R, Y, pmat_transpose(Y)),
                                  pmat_mul(R, pmat_transpose(X), X));
                int nunk = a * (a + 1) / 2 * (N - 1);
                auto map = [&](const std::vector<fqe>& v) {
                    return flatten(pmat_mul(R, M, unpack_sym(R, a, v)));
                };
                PMat Z = unpack_sym(R, a, sample_kernel(F, nunk, map, rng));
                if (accept(family_from_XYZ(F, a, b, X, Y, Z, N), "random-xyz")) return res;
            } else if (shape == 1) {
                int d = cs.l - cs.h;
                PMat Z = rand_sym_tmat(R, d, rng);
                int nunk = (a - cs.l) * d * (N - 1);
                auto map = [&](const std::vector<fqe>& v) {
                    return flatten(pmat_mul(R, unpack_full(R, a - cs.l, d, v), Z));
                };
                PMat Y2 = unpack_full(R, a - cs.l, d, sample_kernel(F, nunk, map, rng));
                if (accept(family_general(F, a, b, cs.h, cs.l, Y2, Z, N), "random-general"))
                    return res;
            } else {
                PMat D = rand_tmat(R, a + b - cs.h, a - cs.h, rng);
                if (accept(family_omega1_only(F, a, b, cs.h, cs.l, D, N), "random-omega1"))
                    return res;
            }
        } catch (const std::exception&) {
            // Constraint rejections along the random path are expected.
        }
    }
    res.exhausted = true;
    return res;
}

FamilyPoint random_family(const Fq& F, int a, int b, int N, std::mt19937_64& rng) {
    RN R(F, N);
    for (;;) {
        try {
            int shape = static_cast<int>(rng() % 3);
            if (shape == 0) {
                PMat X = rand_tmat(R, b - a, a, rng);
                PMat Y = rand_tmat(R, a, a, rng);
                PMat M = pmat_add(R, pmat_add(R, Y, pmat_transpose(Y)),
                                  pmat_mul(R, pmat_transpose(X), X));
                int nunk = a * (a + 1) / 2 * (N - 1);
                auto map = [&](const std::vector<fqe>& v) {
                    return flatten(pmat_mul(R, M, unpack_sym(R, a, v)));
                };
                PMat Z = unpack_sym(R, a, sample_kernel(F, nunk, map, rng));
                return family_from_XYZ(F, a, b, X, Y, Z, N);
            }
            int h = static_cast<int>(rng() % (a + 1));
            int l = h + static_cast<int>(rng() % (a - h + 1));
            if (shape == 1) {
                int d = l - h;
                PMat Z = rand_sym_tmat(R, d, rng);
                int nunk = (a - l) * d * (N - 1);
                auto map = [&](const std::vector<fqe>& v) {
                    return flatten(pmat_mul(R, unpack_full(R, a - l, d, v), Z));
                };
                PMat Y2 = unpack_full(R, a - l, d, sample_kernel(F, nunk, map, rng));
                return family_general(F, a, b, h, l, Y2, Z, N);
            }
            PMat D = rand_tmat(R, a + b - h, a - h, rng);
            return family_omega1_only(F, a, b, h, l, D, N);
        } catch (const std::exception&) {
            // Resample on constraint rejection.
        }
    }
}

} // namespace strata
