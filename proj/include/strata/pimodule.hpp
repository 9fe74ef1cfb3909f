#pragma once

#include "strata/subspace.hpp"

namespace strata {

/// Class of the symmetric pairing induced on ker Pi.
enum class FormCase { OddChar, Char2Case1, Char2Case2 };

const char* form_case_name(FormCase c);
FormCase form_case_from_name(const std::string& s);

/// Ambient module of the special fiber: a 2m-dimensional space over F_q with
/// a square-zero operator Pi of rank m, a perfect alternating pairing <,>
/// compatible with Pi (<Pi x, y> + <x, Pi y> = 0), and the symmetric perfect
/// modified pairing {Pi x, Pi y} := <Pi x, y> on ker Pi.
///
/// The standard frame is e_1..e_m, f_1..f_m with Pi e_i = f_i, Pi f_i = 0;
/// ker Pi = im Pi = span(f_1..f_m) and the modified Gram matrix on f_1..f_m
/// is the matrix Q supplied at construction.
struct PiSpace {
    const Fq* F = nullptr;
    int a = 0, b = 0, m = 0; // m = a + b
    FormCase form_case = FormCase::OddChar;
    Mat Q;   // m x m modified Gram on ker Pi
    Mat G;   // 2m x 2m Gram of <,>
    Mat Pi;  // 2m x 2m

    int ambient_dim() const { return 2 * m; }
    Subspace ker_pi() const;

    /// Embeds an m x k matrix of ker-Pi coordinates into the 2m ambient.
    Mat embed_f(const Mat& rows_f) const;
    /// Projects ambient columns to their f-part (requires zero e-part).
    Mat f_part_checked(const Mat& cols) const;
};

/// PiSpace in the standard frame with modified Gram Q (symmetric invertible).
PiSpace make_pispace(const Fq& F, int a, int b, const Mat& Q, FormCase c);

/// Standard spaces per case:
///  - OddChar:     Q = antidiag(I_a, I_{b-a}, I_a) blocks
///                 [[0,0,I_a],[0,I_{b-a},0],[I_a,0,0]]
///  - Char2Case1:  Q = I_m (nonzero associated quadratic form)
///  - Char2Case2:  Q = blockdiag(A,...,A), A = [[0,1],[1,0]]; needs m even.
PiSpace standard_space(const Fq& F, int a, int b, FormCase c);

/// Checks all structural invariants; throws std::invalid_argument on failure.
void validate_pispace(const PiSpace& S);

/// Orthogonal complement for the ambient alternating form.
Subspace orthogonal_ambient(const PiSpace& S, const Subspace& W);
/// Orthogonal complement inside ker Pi for the modified pairing; W must lie
/// in ker Pi.
Subspace orthogonal_modified(const PiSpace& S, const Subspace& W);

/// Modified Gram matrix of the pairing restricted to a subspace of ker Pi,
/// in the subspace's basis.
Mat modified_gram_on(const PiSpace& S, const Subspace& W);

Subspace image_under_pi(const PiSpace& S, const Subspace& U);
Subspace preimage_under_pi(const PiSpace& S, const Subspace& U);

} // namespace strata
