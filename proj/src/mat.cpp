#include "strata/mat.hpp"

#include <stdexcept>

namespace strata {

Mat Mat::from_rows(std::initializer_list<std::initializer_list<int>> rows, const Fq& F) {
    Mat m(static_cast<int>(rows.size()), rows.size() ? static_cast<int>(rows.begin()->size()) : 0);
    int i = 0;
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != m.nc) throw std::invalid_argument("ragged rows");
        int j = 0;
        for (int v : r) {
            int q = F.q();
            int red = ((v % q) + q) % q;
            // Negative literals are only meaningful for prime fields.
            m.at(i, j) = (v >= 0 || F.f() == 1) ? static_cast<fqe>(red)
                                                : F.neg(static_cast<fqe>(((-v) % q)));
            ++j;
        }
        ++i;
    }
    return m;
}

Mat mat_add(const Fq& F, const Mat& A, const Mat& B) {
    if (A.nr != B.nr || A.nc != B.nc) throw std::invalid_argument("mat_add: shape mismatch");
    Mat C(A.nr, A.nc);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = F.add(A.a[i], B.a[i]);
    return C;
}

Mat mat_sub(const Fq& F, const Mat& A, const Mat& B) {
    if (A.nr != B.nr || A.nc != B.nc) throw std::invalid_argument("mat_sub: shape mismatch");
    Mat C(A.nr, A.nc);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = F.sub(A.a[i], B.a[i]);
    return C;
}

Mat mat_neg(const Fq& F, const Mat& A) {
    Mat C(A.nr, A.nc);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = F.neg(A.a[i]);
    return C;
}

Mat mat_mul(const Fq& F, const Mat& A, const Mat& B) {
    if (A.nc != B.nr) throw std::invalid_argument("mat_mul: shape mismatch");
    Mat C(A.nr, B.nc);
    for (int i = 0; i < A.nr; ++i)
        for (int k = 0; k < A.nc; ++k) {
            fqe v = A.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < B.nc; ++j)
                C.at(i, j) = F.add(C.at(i, j), F.mul(v, B.at(k, j)));
        }
    return C;
}

Mat mat_scal(const Fq& F, fqe c, const Mat& A) {
    Mat C(A.nr, A.nc);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = F.mul(c, A.a[i]);
    return C;
}

Mat transpose(const Mat& A) {
    Mat C(A.nc, A.nr);
    for (int i = 0; i < A.nr; ++i)
        for (int j = 0; j < A.nc; ++j) C.at(j, i) = A.at(i, j);
    return C;
}

Mat hconcat(const Mat& A, const Mat& B) {
    if (A.nr != B.nr) throw std::invalid_argument("hconcat: row mismatch");
    Mat C(A.nr, A.nc + B.nc);
    for (int i = 0; i < A.nr; ++i) {
        for (int j = 0; j < A.nc; ++j) C.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.nc; ++j) C.at(i, A.nc + j) = B.at(i, j);
    }
    return C;
}

Mat vconcat(const Mat& A, const Mat& B) {
    if (A.nc != B.nc) throw std::invalid_argument("vconcat: col mismatch");
    Mat C(A.nr + B.nr, A.nc);
    for (int i = 0; i < A.nr; ++i)
        for (int j = 0; j < A.nc; ++j) C.at(i, j) = A.at(i, j);
    for (int i = 0; i < B.nr; ++i)
        for (int j = 0; j < A.nc; ++j) C.at(A.nr + i, j) = B.at(i, j);
    return C;
}

bool is_zero(const Mat& A) {
    for (fqe v : A.a)
        if (v != 0) return false;
    return true;
}

Mat mat_frobenius(const Fq& F, const Mat& A) {
    Mat C(A.nr, A.nc);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = F.frobenius(A.a[i]);
    return C;
}

Mat mat_frobenius_inv(const Fq& F, const Mat& A) {
    Mat C(A.nr, A.nc);
    for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = F.frobenius_inv(A.a[i]);
    return C;
}

namespace {

// Row echelon with full reduction; returns pivot columns.  Operates in place.
std::vector<int> row_reduce(const Fq& F, Mat& A) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < A.nc && r < A.nr; ++c) {
        int pr = -1;
        for (int i = r; i < A.nr; ++i)
            if (A.at(i, c) != 0) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < A.nc; ++j) std::swap(A.at(pr, j), A.at(r, j));
        fqe piv = F.inv(A.at(r, c));
        for (int j = 0; j < A.nc; ++j) A.at(r, j) = F.mul(piv, A.at(r, j));
        for (int i = 0; i < A.nr; ++i) {
            if (i == r) continue;
            fqe v = A.at(i, c);
            if (v == 0) continue;
            for (int j = 0; j < A.nc; ++j)
                A.at(i, j) = F.sub(A.at(i, j), F.mul(v, A.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

Mat col_echelon(const Fq& F, const Mat& A) {
    Mat T = transpose(A);
    row_reduce(F, T);
    // Drop zero rows of T (zero columns of the echelon form).
    int nz = 0;
    for (int i = 0; i < T.nr; ++i) {
        bool z = true;
        for (int j = 0; j < T.nc; ++j)
            if (T.at(i, j) != 0) { z = false; break; }
        if (!z) ++nz;
    }
    Mat R(A.nr, nz);
    int k = 0;
    for (int i = 0; i < T.nr; ++i) {
        bool z = true;
        for (int j = 0; j < T.nc; ++j)
            if (T.at(i, j) != 0) { z = false; break; }
        if (z) continue;
        for (int j = 0; j < T.nc; ++j) R.at(j, k) = T.at(i, j);
        ++k;
    }
    return R;
}

int rank(const Fq& F, const Mat& A) {
    Mat B = A;
    return static_cast<int>(row_reduce(F, B).size());
}

Mat nullspace(const Fq& F, const Mat& A) {
    Mat B = A;
    std::vector<int> pivots = row_reduce(F, B);
    std::vector<bool> is_pivot(A.nc, false);
    for (int c : pivots) is_pivot[c] = true;
    int nfree = A.nc - static_cast<int>(pivots.size());
    Mat K(A.nc, nfree);
    int k = 0;
    for (int c = 0; c < A.nc; ++c) {
        if (is_pivot[c]) continue;
        K.at(c, k) = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            if (static_cast<int>(r) < B.nr) K.at(pivots[r], k) = F.neg(B.at(static_cast<int>(r), c));
        ++k;
    }
    return col_echelon(F, K);
}

bool solve(const Fq& F, const Mat& A, const Mat& b, Mat& x) {
    Mat X;
    if (!solve_matrix(F, A, b, X)) return false;
    x = X;
    return true;
}

bool solve_matrix(const Fq& F, const Mat& A, const Mat& B, Mat& X) {
    if (A.nr != B.nr) throw std::invalid_argument("solve_matrix: shape mismatch");
    Mat Aug = hconcat(A, B);
    std::vector<int> pivots = row_reduce(F, Aug);
    for (int c : pivots)
        if (c >= A.nc) return false; // pivot in the augmented block
    X = Mat(A.nc, B.nc);
    for (size_t r = 0; r < pivots.size(); ++r)
        for (int j = 0; j < B.nc; ++j)
            X.at(pivots[r], j) = Aug.at(static_cast<int>(r), A.nc + j);
    return true;
}

Mat inverse(const Fq& F, const Mat& A) {
    if (A.nr != A.nc) throw std::invalid_argument("inverse: not square");
    Mat X;
    if (!solve_matrix(F, A, Mat::identity(A.nr), X) || rank(F, A) != A.nr)
        throw std::domain_error("inverse: singular matrix");
    return X;
}

Mat left_nullspace(const Fq& F, const Mat& A) {
    return transpose(nullspace(F, transpose(A)));
}

fqe det(const Fq& F, Mat A) {
    if (A.nr != A.nc) throw std::invalid_argument("det: not square");
    fqe d = 1;
    int n = A.nr;
    for (int c = 0; c < n; ++c) {
        int pr = -1;
        for (int i = c; i < n; ++i)
            if (A.at(i, c) != 0) { pr = i; break; }
        if (pr < 0) return 0;
        if (pr != c) {
            for (int j = 0; j < n; ++j) std::swap(A.at(pr, j), A.at(c, j));
            d = F.neg(d);
        }
        d = F.mul(d, A.at(c, c));
        fqe piv = F.inv(A.at(c, c));
        for (int i = c + 1; i < n; ++i) {
            fqe v = F.mul(piv, A.at(i, c));
            if (v == 0) continue;
            for (int j = c; j < n; ++j)
                A.at(i, j) = F.sub(A.at(i, j), F.mul(v, A.at(c, j)));
        }
    }
    return d;
}

} // namespace strata
