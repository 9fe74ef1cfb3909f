#pragma once

#include "strata/deform.hpp"
#include "strata/localmodel.hpp"

#include <map>
#include <set>

namespace strata {

/// Verschiebung datum for signature (1, n): a point (omega, omega1) of the
/// m = n+1 space together with the matrix V of a Frobenius-semilinear map
/// x -> V x^(p) with image omega^(p), commuting with Pi, whose kernel is
/// totally isotropic.  Where the induced map on ker Pi is everywhere defined
/// (m(x) = 0) its restriction must be a similitude of the modified pairing:
/// the composition with its pairing-adjoint is a unit multiple of the
/// identity; the unit is recorded.
struct DieudonneDatum {
    PiSpace S;
    LMPoint x;
    Mat V; // 2m x 2m
    fqe unit = 0; // recorded similitude unit when m(x) = 0, else 0
};

void validate_datum(DieudonneDatum& d);
bool is_valid_datum(DieudonneDatum& d);

/// F_i = pi V^{-1}(omega_i^(p)); rank 1 for i = 1 and n for i = 2, inside
/// ker Pi.  Throws on a datum whose ranks degenerate.
Subspace conjugate_F(const DieudonneDatum& d, int i);

struct Invariants4 {
    bool b_nonzero = false;  // omega1 not inside omega2  (l = 0)
    bool m_nonzero = false;  // Pi omega != 0             (h = 1)
    bool hasse1_zero = false; // omega1 == F_1
    bool hasse2_zero = false; // omega1 inside F_2
};

Invariants4 invariants4(const DieudonneDatum& d);

enum class Stratum9 { Xord, R1, R2, B0, B1, B2, P0, P1, P2 };
const char* stratum9_name(Stratum9 s);

/// The coarse label of a refined stratum: Xord/R1/R2 -> (1,1), B* -> (0,0),
/// P* -> (0,1).
StratumLabel coarse_of(Stratum9 s);

/// Unique stratum matching the invariant pattern; throws if the pattern is
/// one of the excluded combinations (a datum-invariant bug).
Stratum9 stratum9(const DieudonneDatum& d);

/// Closure sets of the nine strata for signature (1, n); for n <= 2 the
/// everywhere-empty strata R1 and P1 are removed.
std::map<Stratum9, std::set<Stratum9>> poset9(int n);

/// Closure poset as directed edges (stratum -> member of its closure).
std::vector<std::pair<Stratum9, Stratum9>> poset9_edges(int n);

/// Random pairing- and Pi-preserving automorphism applied to the datum.
DieudonneDatum conjugate_datum(const DieudonneDatum& d, std::mt19937_64& rng);

struct SearchStats {
    long long trials = 0;
    long long accepted = 0;
    std::map<Stratum9, long long> label_counts;
};

/// Seeded randomized search for valid data; emits accepted data through fn
/// until `target` have been produced or `max_trials` attempts are spent.
SearchStats search_examples(const Fq& F, int n, long long target, long long max_trials,
                            uint64_t seed,
                            const std::function<void(const DieudonneDatum&)>& fn = {});

} // namespace strata
