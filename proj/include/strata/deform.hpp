#pragma once

#include "strata/localmodel.hpp"
#include "strata/trunc.hpp"

#include <optional>
#include <random>

namespace strata {

/// Family of points over R_N = F_q[t]/(t^N): the ambient Pi and Gram are the
/// constant lifts; omega and omega1 are direct-summand submodules given by
/// basis matrices whose reduction at t = 0 has full rank.
struct FamilyPoint {
    PiSpace S;      // owned copy of the ambient frame
    int N = 0;
    PMat omega_b;   // 2m x m
    PMat omega1_b;  // 2m x a
};

struct StrataPair {
    StratumLabel special;
    StratumLabel generic;
};

struct TruncationInsufficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FamilyConstraintError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Checks all family conditions identically over R_N; throws on violation.
void validate_family(const FamilyPoint& fam);
bool is_valid_family(const FamilyPoint& fam);

LMPoint special_point(const FamilyPoint& fam);
/// Substitutes t = c.
LMPoint evaluate_at(const FamilyPoint& fam, fqe c);

/// Special invariants from the t = 0 reduction, generic invariants from
/// valuation ranks.  Every valuation-based rank asserts headroom (max
/// observed finite valuation <= N-2); TruncationInsufficient otherwise.
StrataPair generic_special_strata(const FamilyPoint& fam);

/// Constant family at a point.
FamilyPoint constant_family(const PiSpace& S, const LMPoint& x, int N);

/// Deformation at a point of the most degenerate stratum (h, l) = (0, a) in
/// the standard odd-characteristic frame.  X is (b-a) x a, Y and Z are a x a,
/// all with entries in t R_N; requires Z = Z^T and (Y + Y^T + X^T X) Z = 0.
/// Special stratum (0, a); generic (rank Z, nullity(Y + Y^T + X^T X)).
FamilyPoint family_from_XYZ(const Fq& F, int a, int b, const PMat& X, const PMat& Y,
                            const PMat& Z, int N);

/// Frame adapted to a base point of the stratum (h, l): modified Gram with
/// blocks of sizes (h, l-h, a-l, b-l, l-h, h) pairing block 1 with 6, 2 with
/// 5, and identity on blocks 3, 4.
PiSpace stratum_frame(const Fq& F, int a, int b, int h, int l);
/// The base point of stratum (h, l) in that frame.
LMPoint stratum_base_point(const PiSpace& S, int h, int l);

/// General deformation at a base point of stratum (h, l): Y2 is
/// (a-l) x (l-h), Z is (l-h) x (l-h), entries in t R_N, Z = Z^T, Y2 Z = 0.
/// Special stratum (h, l); generic (h + rank Z, h + dim ker Y2).
FamilyPoint family_general(const Fq& F, int a, int b, int h, int l, const PMat& Y2,
                           const PMat& Z, int N);

/// Deformation moving only omega1 inside omega[pi] (omega constant), at the
/// stratum-(h, l) base point: D is (a+b-h) x (a-h) over t R_N, added to the
/// last a-h columns of omega1 in ker-Pi coordinates of omega[pi].
/// Keeps h; the generic l depends on D.
FamilyPoint family_omega1_only(const Fq& F, int a, int b, int h, int l, const PMat& D, int N);

/// Dimension of the space of first-order deformations of x (over the dual
/// numbers) respecting all point conditions, in the echelon-frame chart.
int tangent_dim(const PiSpace& S, const LMPoint& x);

struct LiftResult {
    bool solvable = false;
    int solution_dim = 0;
};

/// Decides whether the family extends from R_N to R_{N+1}; the lifting
/// unknowns enter linearly since t^{2N} = 0 past the new order.
LiftResult lift_step(const FamilyPoint& fam);

/// Mod-t^2 family at a stratum-(h, l) point with h < l (p odd) that admits
/// no extension to t^3: first-order witness of non-smoothness.
FamilyPoint nonsmooth_witness_family(const Fq& F, int a, int b, int h, int l);

/// Characteristic-2, identity-form analogue: a mod-t^2 family at a point
/// with h = l = 1 (a = 1) that does not extend to t^3.
FamilyPoint char2_obstruction_family(const Fq& F, int b);

struct WitnessResult {
    bool found = false;
    bool exhausted = false;
    std::optional<FamilyPoint> family;
    StrataPair pair;
    std::string route; // which construction produced the witness
};

/// Searches for a verified family with the requested special and generic
/// strata.  Structured candidates (monomial matrices in t) are tried before
/// seeded random search.  Requires stratum_leq(c_special, c_generic), p odd.
WitnessResult closure_witness_search(const Fq& F, int a, int b, StratumLabel c_special,
                                     StratumLabel c_generic, int N, long long budget,
                                     uint64_t seed);

/// Seeded random valid family at stratum (h, l), drawn from the three
/// constructive shapes; used for semicontinuity sweeps.
FamilyPoint random_family(const Fq& F, int a, int b, int N, std::mt19937_64& rng);

} // namespace strata
