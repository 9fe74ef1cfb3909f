#include "strata/localmodel.hpp"

#include <numeric>
#include <stdexcept>

namespace strata {

void validate_point(const PiSpace& S, const LMPoint& x) {
    const Fq& F = *S.F;
    int m = S.m;
    if (x.omega.ambient != 2 * m || x.omega1.ambient != 2 * m)
        throw std::invalid_argument("point: ambient mismatch");
    if (x.omega.dim() != m) throw std::invalid_argument("point: dim omega != m");
    if (x.omega1.dim() != S.a) throw std::invalid_argument("point: dim omega1 != a");
    Mat iso = mat_mul(F, mat_mul(F, transpose(x.omega.basis), S.G), x.omega.basis);
    if (!is_zero(iso)) throw std::invalid_argument("point: omega not isotropic");
    if (!is_zero(mat_mul(F, S.Pi, x.omega1.basis)))
        throw std::invalid_argument("point: Pi omega1 != 0");
    if (!subspace_leq(F, x.omega1, x.omega))
        throw std::invalid_argument("point: omega1 not inside omega");
    Subspace pio = image_under_pi(S, x.omega);
    if (!subspace_leq(F, pio, x.omega1))
        throw std::invalid_argument("point: Pi omega not inside omega1");
}

bool is_valid_point(const PiSpace& S, const LMPoint& x) {
    try {
        validate_point(S, x);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

Subspace omega2(const PiSpace& S, const LMPoint& x) {
    validate_point(S, x);
    return orthogonal_modified(S, x.omega1);
}

StratumLabel invariants(const PiSpace& S, const LMPoint& x) {
    const Fq& F = *S.F;
    validate_point(S, x);
    Subspace pio = image_under_pi(S, x.omega);
    Subspace w2 = orthogonal_modified(S, x.omega1);
    StratumLabel c;
    c.h = pio.dim();
    c.l = intersect(F, x.omega1, w2).dim();
    return c;
}

int dim_formula(int a, int b, int h, int l) {
    if (!(0 <= h && h <= l && l <= a && a <= b))
        throw std::invalid_argument("dim_formula: label out of range");
    int d = l - h;
    return a * b - d * (d + 1) / 2;
}

bool stratum_leq(const StratumLabel& cp, const StratumLabel& c) {
    return cp.h <= c.h && cp.l >= c.l;
}

std::vector<StratumLabel> all_labels(int a) {
    std::vector<StratumLabel> v;
    for (int h = 0; h <= a; ++h)
        for (int l = h; l <= a; ++l) v.push_back({h, l});
    return v;
}

std::vector<std::pair<StratumLabel, StratumLabel>> stratum_hasse_edges(int a) {
    // Covering relations of the closure order.
    auto labels = all_labels(a);
    std::vector<std::pair<StratumLabel, StratumLabel>> edges;
    for (const auto& c : labels)
        for (const auto& cp : labels) {
            if (cp == c || !stratum_leq(cp, c)) continue;
            bool covering = true;
            for (const auto& mid : labels) {
                if (mid == c || mid == cp) continue;
                if (stratum_leq(cp, mid) && stratum_leq(mid, c)) { covering = false; break; }
            }
            if (covering) edges.push_back({c, cp});
        }
    return edges;
}

namespace {

long long pow_ll(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Estimated number of points: each stratum contributes on the order of
// q^dim, with a small constant absorbed into the safety factor.
long long point_estimate(const PiSpace& S) {
    int q = S.F->q(), a = S.a, b = S.b;
    long long est = 0;
    for (int h = 0; h <= a; ++h)
        for (int l = h; l <= a; ++l) {
            int d = dim_formula(a, b, h, l);
            if (d > 60) return 1LL << 62;
            est += pow_ll(q, d);
        }
    return 4 * est;
}

} // namespace

void enumerate_points(const PiSpace& S, const std::function<bool(const LMPoint&)>& fn,
                      long long max_points) {
    const Fq& F = *S.F;
    int m = S.m, a = S.a;
    if (max_points > 0) {
        long long est = point_estimate(S);
        if (est > max_points) throw BudgetExceeded(est);
    }
    // omega1 ranges over a-dimensional subspaces of ker Pi.
    enumerate_subspaces(F, m, a, [&](const Subspace& W1f) -> bool {
        Subspace w1;
        w1.ambient = 2 * m;
        w1.basis = S.embed_f(W1f.basis);

        // omega corresponds to a Lagrangian-type extension: pass to the
        // symplectic reduction by omega1 and enumerate isotropic (m-a)-dim
        // subspaces of (Pi^{-1} omega1 cap omega1^perp) / omega1.
        Subspace w1perp = orthogonal_ambient(S, w1);
        Subspace constraint = intersect(F, preimage_under_pi(S, w1), w1perp);

        // Complement basis of omega1 inside the constraint space, by greedy
        // selection of constraint columns independent of omega1.
        Mat comp(2 * m, 0);
        {
            Mat cur = w1.basis;
            for (int j = 0; j < constraint.basis.nc; ++j) {
                Mat v = constraint.basis.col(j);
                Mat test = hconcat(cur, v);
                if (rank(F, test) > cur.nc) {
                    cur = test;
                    comp = hconcat(comp, v);
                }
            }
        }
        if (comp.nc < m - a) return true; // fiber empty

        // Induced form on the quotient in complement coordinates.
        Mat g = mat_mul(F, mat_mul(F, transpose(comp), S.G), comp);

        return enumerate_isotropic_in(F, comp, g, m - a, [&](const Mat& Lamb) -> bool {
            LMPoint x;
            x.omega1 = w1;
            x.omega = Subspace(F, 2 * m, hconcat(w1.basis, Lamb));
            if (x.omega.dim() != m) return true; // degenerate lift, skip
            return fn(x);
        });
    });
}

std::map<StratumLabel, long long> count_by_stratum(const PiSpace& S, long long max_points) {
    std::map<StratumLabel, long long> counts;
    enumerate_points(S, [&](const LMPoint& x) {
        ++counts[invariants(S, x)];
        return true;
    }, max_points);
    return counts;
}

// ---------------------------------------------------------------------------
// Exact rational interpolation.

namespace {
long long gcd_ll(long long a, long long b) {
    while (b) { long long t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
}
} // namespace

Rational::Rational(long long n) : num(n), den(1) {}

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = gcd_ll(num, den);
    if (g > 1) { num /= g; den /= g; }
}

Rational Rational::operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
Rational Rational::operator-(const Rational& o) const { return Rational(num * o.den - o.num * den, den * o.den); }
Rational Rational::operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0) throw std::domain_error("Rational: division by zero");
    return Rational(num * o.den, den * o.num);
}

std::vector<Rational> interpolate_polynomial(const std::map<int, long long>& samples) {
    size_t k = samples.size();
    if (k < 2) throw InterpolationError("need at least two samples");
    std::vector<Rational> xs, coeffs; // Newton form
    std::vector<std::vector<Rational>> dd; // divided differences
    std::vector<long long> X;
    std::vector<Rational> Y;
    for (auto& [q, c] : samples) { X.push_back(q); Y.push_back(Rational(c)); }
    dd.push_back(Y);
    for (size_t lvl = 1; lvl < k; ++lvl) {
        std::vector<Rational> row;
        for (size_t i = 0; i + lvl < k; ++i) {
            Rational diff = dd[lvl - 1][i + 1] - dd[lvl - 1][i];
            row.push_back(diff / Rational(X[i + lvl] - X[i]));
        }
        dd.push_back(row);
    }
    // Newton -> monomial coefficients.
    std::vector<Rational> poly{Rational(0)};
    std::vector<Rational> basis{Rational(1)}; // prod (x - X_i)
    for (size_t lvl = 0; lvl < k; ++lvl) {
        Rational c = dd[lvl][0];
        if (poly.size() < basis.size()) poly.resize(basis.size(), Rational(0));
        for (size_t i = 0; i < basis.size(); ++i) poly[i] = poly[i] + c * basis[i];
        // basis *= (x - X[lvl])
        std::vector<Rational> nb(basis.size() + 1, Rational(0));
        for (size_t i = 0; i < basis.size(); ++i) {
            nb[i + 1] = nb[i + 1] + basis[i];
            nb[i] = nb[i] - basis[i] * Rational(X[lvl]);
        }
        basis = nb;
    }
    // Trim.
    while (poly.size() > 1 && poly.back().is_zero()) poly.pop_back();
    int deg = poly.size() == 1 && poly[0].is_zero() ? -1 : static_cast<int>(poly.size()) - 1;
    if (deg == static_cast<int>(k) - 1)
        throw InterpolationError("samples not polynomially consistent: no redundant sample "
                                 "confirms the interpolant");
    return poly;
}

int interpolate_degree(const std::map<int, long long>& samples) {
    auto poly = interpolate_polynomial(samples);
    if (poly.size() == 1 && poly[0].is_zero()) return -1;
    return static_cast<int>(poly.size()) - 1;
}

// ---------------------------------------------------------------------------

long long chart_count(const Fq& F, int a, int b, long long max_ops) {
    if (F.p() == 2) throw std::invalid_argument("chart_count: needs p odd");
    if (!(0 <= a && a <= b)) throw std::invalid_argument("chart_count: need 0 <= a <= b");
    int q = F.q();
    int nz = a * (a + 1) / 2;      // symmetric Z
    int nx = (b - a) * a;
    long long outer = pow_ll(q, nz) * pow_ll(q, nx);
    if (max_ops > 0 && outer > max_ops) throw BudgetExceeded(outer);

    long long total = 0;
    std::vector<int> zv(nz, 0), xv(nx, 0);
    auto buildZ = [&](Mat& Z) {
        int k = 0;
        for (int i = 0; i < a; ++i)
            for (int j = i; j < a; ++j) {
                Z.at(i, j) = static_cast<fqe>(zv[k]);
                Z.at(j, i) = static_cast<fqe>(zv[k]);
                ++k;
            }
    };
    auto buildX = [&](Mat& X) {
        int k = 0;
        for (int i = 0; i < b - a; ++i)
            for (int j = 0; j < a; ++j) X.at(i, j) = static_cast<fqe>(xv[k++]);
    };

    // For fixed (X, Z) the condition (Y + Y^T + X^T X) Z = 0 is linear in Y:
    // count solutions as q^{a^2 - rank}.
    Mat Z(a, a), X(b - a, a);
    bool moreZ = true;
    while (moreZ) {
        buildZ(Z);
        bool moreX = true;
        std::fill(xv.begin(), xv.end(), 0);
        while (moreX) {
            buildX(X);
            Mat XtX = mat_mul(F, transpose(X), X);
            Mat C = mat_mul(F, XtX, Z); // constant part of the linear system
            // Unknowns: Y (a^2 entries).  Equations: (Y + Y^T) Z = -C.
            int nY = a * a;
            Mat Amat(a * a, nY);
            Mat rhs(a * a, 1);
            for (int r = 0; r < a; ++r)
                for (int s = 0; s < a; ++s) {
                    int eq = r * a + s;
                    // ((Y + Y^T) Z)_{rs} = sum_k (Y_{rk} + Y_{kr}) Z_{ks}
                    for (int k2 = 0; k2 < a; ++k2) {
                        fqe z = Z.at(k2, s);
                        if (z == 0) continue;
                        Amat.at(eq, r * a + k2) = F.add(Amat.at(eq, r * a + k2), z);
                        Amat.at(eq, k2 * a + r) = F.add(Amat.at(eq, k2 * a + r), z);
                    }
                    rhs.at(eq, 0) = F.neg(C.at(r, s));
                }
            Mat sol;
            if (solve_matrix(F, Amat, rhs, sol) && mat_mul(F, Amat, sol) == rhs) {
                int rk = rank(F, Amat);
                total += pow_ll(q, nY - rk);
            }
            // Advance X.
            moreX = false;
            for (size_t i = 0; i < xv.size(); ++i) {
                if (++xv[i] < q) { moreX = true; break; }
                xv[i] = 0;
            }
            if (xv.empty()) break;
        }
        // Advance Z.
        moreZ = false;
        for (size_t i = 0; i < zv.size(); ++i) {
            if (++zv[i] < q) { moreZ = true; break; }
            zv[i] = 0;
        }
        if (zv.empty()) break;
    }
    return total;
}

} // namespace strata
