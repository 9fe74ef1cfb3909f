#pragma once

#include "strata/mat.hpp"

#include <limits>

namespace strata {

/// Element of R_N = F_q[t]/(t^N): dense coefficient vector of length N,
/// coefficient of t^i at index i.
using Poly = std::vector<fqe>;

constexpr int VAL_INF = std::numeric_limits<int>::max();

/// Arithmetic context for R_N.
struct RN {
    const Fq* F;
    int N;

    RN(const Fq& field, int n) : F(&field), N(n) {
        if (n < 1) throw std::invalid_argument("RN: N must be >= 1");
    }

    Poly zero() const { return Poly(N, 0); }
    Poly one() const {
        Poly p(N, 0);
        p[0] = 1;
        return p;
    }
    Poly scalar(fqe c) const {
        Poly p(N, 0);
        p[0] = c;
        return p;
    }
    Poly t_power(int k, fqe c = 1) const {
        Poly p(N, 0);
        if (k < N) p[k] = c;
        return p;
    }

    Poly add(const Poly& a, const Poly& b) const;
    Poly sub(const Poly& a, const Poly& b) const;
    Poly neg(const Poly& a) const;
    Poly mul(const Poly& a, const Poly& b) const;
    Poly scal(fqe c, const Poly& a) const;
    bool is_zero(const Poly& a) const;

    /// t-adic valuation: index of the first nonzero coefficient, VAL_INF for 0.
    int valuation(const Poly& a) const;
    bool is_unit(const Poly& a) const { return a[0] != 0; }
    /// Series inverse of a unit.
    Poly inv(const Poly& a) const;
    /// Exact division by t^k; requires valuation >= k (or zero).
    Poly shift_down(const Poly& a, int k) const;
    Poly shift_up(const Poly& a, int k) const;

    fqe eval(const Poly& a, fqe c) const;
};

/// Dense matrix over R_N.
struct PMat {
    int nr = 0, nc = 0, N = 0;
    std::vector<Poly> a;

    PMat() = default;
    PMat(int r, int c, int n) : nr(r), nc(c), N(n), a(static_cast<size_t>(r) * c, Poly(n, 0)) {}

    Poly& at(int i, int j) { return a[static_cast<size_t>(i) * nc + j]; }
    const Poly& at(int i, int j) const { return a[static_cast<size_t>(i) * nc + j]; }

    bool operator==(const PMat& o) const { return nr == o.nr && nc == o.nc && a == o.a; }
};

PMat pmat_from_mat(const RN& R, const Mat& A);
/// Embeds into a larger truncation order (or truncates to a smaller one).
PMat pmat_retrunc(const PMat& A, int newN);
Mat pmat_reduce0(const PMat& A);
/// Coefficient of t^k as a scalar matrix.
Mat pmat_coeff(const PMat& A, int k);
Mat pmat_eval(const RN& R, const PMat& A, fqe c);
PMat pmat_add(const RN& R, const PMat& A, const PMat& B);
PMat pmat_sub(const RN& R, const PMat& A, const PMat& B);
PMat pmat_mul(const RN& R, const PMat& A, const PMat& B);
PMat pmat_transpose(const PMat& A);
PMat pmat_hconcat(const PMat& A, const PMat& B);
bool pmat_is_zero(const PMat& A);

/// Diagonal t-valuations of the Smith-type normal form over R_N: the weakly
/// increasing list d_1 <= d_2 <= ... (VAL_INF entries for identically zero
/// slots), padded to min(nr, nc).  Pivoting picks a minimal-valuation entry,
/// ties broken in row-major order.  Generic rank = #finite entries; special
/// rank = #zero entries.
std::vector<int> smith_valuations(const RN& R, PMat A);

int generic_rank(const RN& R, const PMat& A);
int special_rank(const RN& R, const PMat& A);

/// Largest finite valuation in the Smith form, or -1 if none.
int max_finite_valuation(const RN& R, const PMat& A);

/// Solves A X = B over R_N for A whose reduction at t = 0 has full column
/// rank; order-by-order lifting.  Returns false if inconsistent.
bool rn_solve(const RN& R, const PMat& A, const PMat& B, PMat& X);

/// Inverse of a square matrix whose reduction at t = 0 is invertible.
PMat rn_inverse(const RN& R, const PMat& A);

/// Kernel module basis of A (a x m, reduction full row rank): a free direct
/// summand of rank m - a.
PMat rn_kernel_fullrowrank(const RN& R, const PMat& A);

} // namespace strata
