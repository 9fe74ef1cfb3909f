#pragma once

#include "strata/field.hpp"

#include <initializer_list>
#include <vector>

namespace strata {

/// Dense matrix over a small finite field.  Row-major storage.
struct Mat {
    int nr = 0, nc = 0;
    std::vector<fqe> a;

    Mat() = default;
    Mat(int r, int c) : nr(r), nc(c), a(static_cast<size_t>(r) * c, 0) {}

    fqe& at(int i, int j) { return a[static_cast<size_t>(i) * nc + j]; }
    fqe at(int i, int j) const { return a[static_cast<size_t>(i) * nc + j]; }

    bool operator==(const Mat& o) const { return nr == o.nr && nc == o.nc && a == o.a; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static Mat zero(int r, int c) { return Mat(r, c); }
    static Mat from_rows(std::initializer_list<std::initializer_list<int>> rows, const Fq& F);

    Mat col(int j) const {
        Mat v(nr, 1);
        for (int i = 0; i < nr; ++i) v.at(i, 0) = at(i, j);
        return v;
    }
};

Mat mat_add(const Fq& F, const Mat& A, const Mat& B);
Mat mat_sub(const Fq& F, const Mat& A, const Mat& B);
Mat mat_neg(const Fq& F, const Mat& A);
Mat mat_mul(const Fq& F, const Mat& A, const Mat& B);
Mat mat_scal(const Fq& F, fqe c, const Mat& A);
Mat transpose(const Mat& A);
Mat hconcat(const Mat& A, const Mat& B);
Mat vconcat(const Mat& A, const Mat& B);
bool is_zero(const Mat& A);
/// Entrywise Frobenius x -> x^p.
Mat mat_frobenius(const Fq& F, const Mat& A);
/// Entrywise inverse Frobenius.
Mat mat_frobenius_inv(const Fq& F, const Mat& A);

/// Reduced column echelon form with pivots on increasing rows, unit pivots,
/// pivot rows cleared in all other columns, zero columns removed.  The result
/// is the canonical basis matrix of the column span.
Mat col_echelon(const Fq& F, const Mat& A);

int rank(const Fq& F, const Mat& A);

/// Canonical basis of the right kernel {x : Ax = 0}, as echelon columns.
Mat nullspace(const Fq& F, const Mat& A);

/// Solves A x = b; returns false if inconsistent.  A need not be square.
bool solve(const Fq& F, const Mat& A, const Mat& b, Mat& x);
/// Columnwise solve A X = B; returns false if any column is inconsistent.
bool solve_matrix(const Fq& F, const Mat& A, const Mat& B, Mat& X);

/// Inverse of a square invertible matrix; throws if singular.
Mat inverse(const Fq& F, const Mat& A);

/// Basis (rows) of the left null space {y : yA = 0}.
Mat left_nullspace(const Fq& F, const Mat& A);

fqe det(const Fq& F, Mat A);

} // namespace strata
