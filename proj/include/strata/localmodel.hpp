#pragma once

#include "strata/pimodule.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace strata {

/// Point of the special fiber: omega (dim m, totally isotropic, Pi omega
/// inside omega1) together with omega1 (dim a, killed by Pi, inside omega).
struct LMPoint {
    Subspace omega;
    Subspace omega1;
};

/// Stratum invariants h = dim(Pi omega), l = dim(omega1 cap omega2).
struct StratumLabel {
    int h = 0;
    int l = 0;
    bool operator==(const StratumLabel& o) const { return h == o.h && l == o.l; }
    bool operator<(const StratumLabel& o) const { return h != o.h ? h < o.h : l < o.l; }
};

/// Throws std::invalid_argument if the point violates a condition.
void validate_point(const PiSpace& S, const LMPoint& x);
bool is_valid_point(const PiSpace& S, const LMPoint& x);

/// Orthogonal of omega1 inside ker Pi for the modified pairing (dimension b).
Subspace omega2(const PiSpace& S, const LMPoint& x);

StratumLabel invariants(const PiSpace& S, const LMPoint& x);

/// ab - (l-h)(l-h+1)/2; requires 0 <= h <= l <= a.
int dim_formula(int a, int b, int h, int l);

/// Closure order: cp <= c iff cp.h <= c.h and cp.l >= c.l (labels for the
/// same a).
bool stratum_leq(const StratumLabel& cp, const StratumLabel& c);

/// All valid labels for a given a, sorted.
std::vector<StratumLabel> all_labels(int a);

/// Covering edges of the closure order (from each label to the labels
/// immediately below it).
std::vector<std::pair<StratumLabel, StratumLabel>> stratum_hasse_edges(int a);

struct BudgetExceeded : std::runtime_error {
    long long estimate;
    explicit BudgetExceeded(long long est)
        : std::runtime_error("enumeration budget exceeded"), estimate(est) {}
};

/// Enumerates every valid point exactly once in a deterministic order.
/// fn returns false to abort.  Throws BudgetExceeded if the estimated point
/// count exceeds max_points (0 disables the check).
void enumerate_points(const PiSpace& S, const std::function<bool(const LMPoint&)>& fn,
                      long long max_points = 0);

std::map<StratumLabel, long long> count_by_stratum(const PiSpace& S, long long max_points = 0);

/// Exact rational used by the interpolation routines.
struct Rational {
    long long num = 0, den = 1;
    Rational() = default;
    Rational(long long n);
    Rational(long long n, long long d);
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool is_zero() const { return num == 0; }
};

struct InterpolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Degree of the polynomial interpolating the samples (q, count).  Requires
/// at least one redundant sample: if the interpolant through all k points has
/// degree k-1 the data cannot be confirmed polynomially consistent and an
/// InterpolationError is thrown.  Returns -1 for identically zero data.
int interpolate_degree(const std::map<int, long long>& samples);

/// Coefficients (ascending) of the interpolating polynomial; same
/// consistency requirements as interpolate_degree.
std::vector<Rational> interpolate_polynomial(const std::map<int, long long>& samples);

/// Number of triples (X, Y, Z) over F_q with Z = Z^T and
/// (Y + Y^T + X^T X) Z = 0, where Z, Y are a x a and X is (b-a) x a.
long long chart_count(const Fq& F, int a, int b, long long max_ops = 0);

} // namespace strata
