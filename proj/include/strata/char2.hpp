#pragma once

#include "strata/localmodel.hpp"

namespace strata {

/// Symmetric nondegenerate bilinear form over F_{2^f}; q(x) = <x,x> is the
/// associated quadratic form (a square of a linear form in characteristic 2).
struct SymForm2 {
    const Fq* F = nullptr;
    Mat gram;

    int dim() const { return gram.nr; }
};

SymForm2 make_symform2(const Fq& F, const Mat& gram);

struct FormClassification {
    int case_tag = 0; // 1: Gram ~ identity (q nonzero); 2: Gram ~ blockdiag(A)
    Mat P;            // change of basis: P^T gram P is the normal form
};

/// q(x) vanishes identically iff the Gram diagonal is zero.
bool quadratic_identically_zero(const SymForm2& g);

/// Constructive normal form: P^T G P = I_d (case 1) or blockdiag([[0,1],[1,0]])
/// (case 2).  Greedy with lexicographic tie-breaking, deterministic.
FormClassification classify_form(const SymForm2& g);

/// For a totally isotropic W inside a case-1 form: an orthonormal basis
/// e_1..e_d with W = span(e_1+e_2, e_3+e_4, ..., e_{2h-1}+e_{2h}).
/// Backtracking over exhaustive candidate lists; throws if preconditions
/// fail.
Mat isotropic_normal_basis(const SymForm2& g, const Subspace& W);

struct ParityReport {
    std::map<StratumLabel, long long> counts;
    bool violations = false; // any point with l != a (mod 2)
};

/// Enumerates the case-2 space at (a, b) over F_{2^f} and checks that no
/// occurring label has l incongruent to a mod 2.
ParityReport parity_empty_check(const Fq& F, int a, int b, long long max_points = 0);

} // namespace strata
