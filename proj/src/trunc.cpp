#include "strata/trunc.hpp"

#include <stdexcept>

namespace strata {

Poly RN::add(const Poly& a, const Poly& b) const {
    Poly r(N);
    for (int i = 0; i < N; ++i) r[i] = F->add(a[i], b[i]);
    return r;
}

Poly RN::sub(const Poly& a, const Poly& b) const {
    Poly r(N);
    for (int i = 0; i < N; ++i) r[i] = F->sub(a[i], b[i]);
    return r;
}

Poly RN::neg(const Poly& a) const {
    Poly r(N);
    for (int i = 0; i < N; ++i) r[i] = F->neg(a[i]);
    return r;
}

Poly RN::mul(const Poly& a, const Poly& b) const {
    Poly r(N, 0);
    for (int i = 0; i < N; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j < N; ++j) {
            if (b[j] == 0) continue;
            r[i + j] = F->add(r[i + j], F->mul(a[i], b[j]));
        }
    }
    return r;
}

Poly RN::scal(fqe c, const Poly& a) const {
    Poly r(N);
    for (int i = 0; i < N; ++i) r[i] = F->mul(c, a[i]);
    return r;
}

bool RN::is_zero(const Poly& a) const {
    for (fqe v : a)
        if (v != 0) return false;
    return true;
}

int RN::valuation(const Poly& a) const {
    for (int i = 0; i < N; ++i)
        if (a[i] != 0) return i;
    return VAL_INF;
}

Poly RN::inv(const Poly& a) const {
    if (a[0] == 0) throw std::domain_error("RN::inv: not a unit");
    Poly r(N, 0);
    fqe c0 = F->inv(a[0]);
    r[0] = c0;
    for (int k = 1; k < N; ++k) {
        fqe s = 0;
        for (int i = 1; i <= k; ++i) s = F->add(s, F->mul(a[i], r[k - i]));
        r[k] = F->neg(F->mul(c0, s));
    }
    return r;
}

Poly RN::shift_down(const Poly& a, int k) const {
    Poly r(N, 0);
    for (int i = 0; i < k; ++i)
        if (a[i] != 0) throw std::domain_error("RN::shift_down: valuation too small");
    for (int i = k; i < N; ++i) r[i - k] = a[i];
    return r;
}

Poly RN::shift_up(const Poly& a, int k) const {
    Poly r(N, 0);
    for (int i = 0; i + k < N; ++i) r[i + k] = a[i];
    return r;
}

fqe RN::eval(const Poly& a, fqe c) const {
    fqe r = 0;
    for (int i = N - 1; i >= 0; --i) r = F->add(F->mul(r, c), a[i]);
    return r;
}

PMat pmat_from_mat(const RN& R, const Mat& A) {
    PMat P(A.nr, A.nc, R.N);
    for (int i = 0; i < A.nr; ++i)
        for (int j = 0; j < A.nc; ++j) P.at(i, j)[0] = A.at(i, j);
    return P;
}

PMat pmat_retrunc(const PMat& A, int newN) {
    PMat P(A.nr, A.nc, newN);
    for (size_t k = 0; k < A.a.size(); ++k)
        for (int i = 0; i < std::min(A.N, newN); ++i) P.a[k][i] = A.a[k][i];
    return P;
}

Mat pmat_reduce0(const PMat& A) { return pmat_coeff(A, 0); }

Mat pmat_coeff(const PMat& A, int k) {
    Mat M(A.nr, A.nc);
    if (k < A.N)
        for (size_t i = 0; i < A.a.size(); ++i) M.a[i] = A.a[i][k];
    return M;
}

Mat pmat_eval(const RN& R, const PMat& A, fqe c) {
    Mat M(A.nr, A.nc);
    for (size_t i = 0; i < A.a.size(); ++i) M.a[i] = R.eval(A.a[i], c);
    return M;
}

PMat pmat_add(const RN& R, const PMat& A, const PMat& B) {
    if (A.nr != B.nr || A.nc != B.nc) throw std::invalid_argument("pmat_add: shape mismatch");
    PMat C(A.nr, A.nc, R.N);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = R.add(A.a[i], B.a[i]);
    return C;
}

PMat pmat_sub(const RN& R, const PMat& A, const PMat& B) {
    if (A.nr != B.nr || A.nc != B.nc) throw std::invalid_argument("pmat_sub: shape mismatch");
    PMat C(A.nr, A.nc, R.N);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = R.sub(A.a[i], B.a[i]);
    return C;
}

PMat pmat_mul(const RN& R, const PMat& A, const PMat& B) {
    if (A.nc != B.nr) throw std::invalid_argument("pmat_mul: shape mismatch");
    PMat C(A.nr, B.nc, R.N);
    for (int i = 0; i < A.nr; ++i)
        for (int k = 0; k < A.nc; ++k) {
            const Poly& v = A.at(i, k);
            if (R.is_zero(v)) continue;
            for (int j = 0; j < B.nc; ++j) {
                if (R.is_zero(B.at(k, j))) continue;
                C.at(i, j) = R.add(C.at(i, j), R.mul(v, B.at(k, j)));
            }
        }
    return C;
}

PMat pmat_transpose(const PMat& A) {
    PMat C(A.nc, A.nr, A.N);
    for (int i = 0; i < A.nr; ++i)
        for (int j = 0; j < A.nc; ++j) C.at(j, i) = A.at(i, j);
    return C;
}

PMat pmat_hconcat(const PMat& A, const PMat& B) {
    if (A.nr != B.nr || A.N != B.N) throw std::invalid_argument("pmat_hconcat: mismatch");
    PMat C(A.nr, A.nc + B.nc, A.N);
    for (int i = 0; i < A.nr; ++i) {
        for (int j = 0; j < A.nc; ++j) C.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.nc; ++j) C.at(i, A.nc + j) = B.at(i, j);
    }
    return C;
}

bool pmat_is_zero(const PMat& A) {
    for (const Poly& p : A.a)
        for (fqe v : p)
            if (v != 0) return false;
    return true;
}

std::vector<int> smith_valuations(const RN& R, PMat A) {
    int k = std::min(A.nr, A.nc);
    std::vector<int> vals;
    std::vector<bool> row_done(A.nr, false), col_done(A.nc, false);
    for (int step = 0; step < k; ++step) {
        // Minimal-valuation entry among the active submatrix, row-major ties.
        int best = VAL_INF, bi = -1, bj = -1;
        for (int i = 0; i < A.nr; ++i) {
            if (row_done[i]) continue;
            for (int j = 0; j < A.nc; ++j) {
                if (col_done[j]) continue;
                int v = R.valuation(A.at(i, j));
                if (v < best) { best = v; bi = i; bj = j; }
            }
        }
        if (bi < 0) break; // all remaining entries are zero
        vals.push_back(best);
        // Normalize the pivot to exactly t^best.
        Poly unit = R.shift_down(A.at(bi, bj), best); // unit part
        Poly unit_inv = R.inv(unit);
        for (int i = 0; i < A.nr; ++i)
            if (!row_done[i]) A.at(i, bj) = R.mul(A.at(i, bj), unit_inv);
        // Clear the pivot row and column; quotients are exact by minimality.
        for (int j = 0; j < A.nc; ++j) {
            if (col_done[j] || j == bj) continue;
            const Poly& e = A.at(bi, j);
            if (R.is_zero(e)) continue;
            Poly q = R.shift_down(e, best);
            for (int i = 0; i < A.nr; ++i) {
                if (row_done[i]) continue;
                A.at(i, j) = R.sub(A.at(i, j), R.shift_up(R.mul(q, R.shift_down(A.at(i, bj), best)), best));
            }
        }
        for (int i = 0; i < A.nr; ++i) {
            if (row_done[i] || i == bi) continue;
            const Poly& e = A.at(i, bj);
            if (R.is_zero(e)) continue;
            Poly q = R.shift_down(e, best);
            for (int j = 0; j < A.nc; ++j) {
                if (col_done[j]) continue;
                A.at(i, j) = R.sub(A.at(i, j), R.shift_up(R.mul(q, R.shift_down(A.at(bi, j), best)), best));
            }
        }
        row_done[bi] = true;
        col_done[bj] = true;
    }
    while (static_cast<int>(vals.size()) < k) vals.push_back(VAL_INF);
    return vals;
}

int generic_rank(const RN& R, const PMat& A) {
    auto v = smith_valuations(R, A);
    int r = 0;
    for (int d : v)
        if (d != VAL_INF) ++r;
    return r;
}

int special_rank(const RN& R, const PMat& A) {
    auto v = smith_valuations(R, A);
    int r = 0;
    for (int d : v)
        if (d == 0) ++r;
    return r;
}

int max_finite_valuation(const RN& R, const PMat& A) {
    auto v = smith_valuations(R, A);
    int m = -1;
    for (int d : v)
        if (d != VAL_INF && d > m) m = d;
    return m;
}

bool rn_solve(const RN& R, const PMat& A, const PMat& B, PMat& X) {
    if (A.nr != B.nr) throw std::invalid_argument("rn_solve: shape mismatch");
    const Fq& F = *R.F;
    Mat A0 = pmat_reduce0(A);
    if (rank(F, A0) != A.nc) throw std::invalid_argument("rn_solve: reduction not full column rank");
    X = PMat(A.nc, B.nc, R.N);
    // Residual = B - A X, maintained order by order.
    PMat res = B;
    for (int k = 0; k < R.N; ++k) {
        Mat rk = pmat_coeff(res, k);
        Mat xk;
        if (!solve_matrix(F, A0, rk, xk)) return false;
        // Consistency at this order (solve_matrix only checks pivot rows).
        if (mat_mul(F, A0, xk) != rk) return false;
        for (int i = 0; i < A.nc; ++i)
            for (int j = 0; j < B.nc; ++j) X.at(i, j)[k] = xk.at(i, j);
        if (k + 1 < R.N) {
            // res -= A * (t^k xk)
            PMat step(A.nc, B.nc, R.N);
            for (int i = 0; i < A.nc; ++i)
                for (int j = 0; j < B.nc; ++j) step.at(i, j)[k] = xk.at(i, j);
            res = pmat_sub(R, res, pmat_mul(R, A, step));
        }
    }
    return true;
}

PMat rn_inverse(const RN& R, const PMat& A) {
    if (A.nr != A.nc) throw std::invalid_argument("rn_inverse: not square");
    PMat X;
    if (!rn_solve(R, A, pmat_from_mat(R, Mat::identity(A.nr)), X))
        throw std::domain_error("rn_inverse: singular reduction");
    return X;
}

PMat rn_kernel_fullrowrank(const RN& R, const PMat& A) {
    const Fq& F = *R.F;
    Mat A0 = pmat_reduce0(A);
    if (rank(F, A0) != A.nr) throw std::invalid_argument("rn_kernel: reduction not full row rank");
    // Pivot columns of the reduction give an invertible submatrix over R_N.
    Mat T = A0;
    Mat Tcopy = T;
    // Row reduce to find pivot columns.
    std::vector<int> pivcols;
    {
        Mat W = A0;
        int r = 0;
        for (int c = 0; c < W.nc && r < W.nr; ++c) {
            int pr = -1;
            for (int i = r; i < W.nr; ++i)
                if (W.at(i, c) != 0) { pr = i; break; }
            if (pr < 0) continue;
            if (pr != r)
                for (int j = 0; j < W.nc; ++j) std::swap(W.at(pr, j), W.at(r, j));
            fqe piv = F.inv(W.at(r, c));
            for (int j = 0; j < W.nc; ++j) W.at(r, j) = F.mul(piv, W.at(r, j));
            for (int i = 0; i < W.nr; ++i) {
                if (i == r) continue;
                fqe v = W.at(i, c);
                if (v == 0) continue;
                for (int j = 0; j < W.nc; ++j) W.at(i, j) = F.sub(W.at(i, j), F.mul(v, W.at(r, j)));
            }
            pivcols.push_back(c);
            ++r;
        }
    }
    std::vector<bool> is_piv(A.nc, false);
    for (int c : pivcols) is_piv[c] = true;
    PMat Apiv(A.nr, A.nr, R.N);
    for (int i = 0; i < A.nr; ++i)
        for (size_t k = 0; k < pivcols.size(); ++k) Apiv.at(i, static_cast<int>(k)) = A.at(i, pivcols[k]);
    PMat Apiv_inv = rn_inverse(R, Apiv);
    int nfree = A.nc - A.nr;
    PMat K(A.nc, nfree, R.N);
    int kcol = 0;
    for (int c = 0; c < A.nc; ++c) {
        if (is_piv[c]) continue;
        PMat colc(A.nr, 1, R.N);
        for (int i = 0; i < A.nr; ++i) colc.at(i, 0) = A.at(i, c);
        PMat x = pmat_mul(R, Apiv_inv, colc);
        K.at(c, kcol) = R.one();
        for (size_t k = 0; k < pivcols.size(); ++k)
            K.at(pivcols[k], kcol) = R.neg(x.at(static_cast<int>(k), 0));
        ++kcol;
    }
    return K;
}

} // namespace strata
