#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "strata/trunc.hpp"

#include <random>

using namespace strata;

TEST_CASE("frobenius fixes 0 and 1 and cubes a generator of F9") {
    Fq F(3, 2);
    CHECK(F.frobenius(0) == 0);
    CHECK(F.frobenius(1) == 1);
    fqe g = F.generator();
    // Direct exponentiation oracle: x^p.
    CHECK(F.frobenius(g) == F.pow(g, 3));
    CHECK(F.frobenius(F.frobenius(g)) == g); // order f = 2
}

TEST_CASE("field axioms hold exhaustively for small fields") {
    for (auto [p, f] :
         {std::pair{2, 1}, {2, 2}, {3, 1}, {3, 2}, {5, 1}, {2, 3}, {3, 3}, {7, 2}}) {
        Fq F(p, f);
        int q = F.q();
        for (int a = 0; a < q; ++a) {
            CHECK(F.add(a, F.neg(a)) == 0);
            if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
            for (int b = 0; b < q; ++b) {
                CHECK(F.mul(a, b) == F.mul(b, a));
                CHECK(F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b)));
                for (int c = 0; c < std::min(q, 8); ++c) {
                    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
                    CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
                }
            }
        }
        // frobenius iterated f times is the identity
        for (int a = 0; a < q; ++a) {
            fqe x = static_cast<fqe>(a);
            for (int i = 0; i < f; ++i) x = F.frobenius(x);
            CHECK(x == static_cast<fqe>(a));
            CHECK(F.frobenius(F.frobenius_inv(a)) == static_cast<fqe>(a));
        }
    }
}

TEST_CASE("moduli are the documented lexicographically smallest irreducibles") {
    CHECK(Fq(2, 2).modulus() == std::vector<int>({1, 1, 1}));  // x^2+x+1
    CHECK(Fq(3, 2).modulus() == std::vector<int>({1, 0, 1}));  // x^2+1
    CHECK(Fq(2, 3).modulus() == std::vector<int>({1, 1, 0, 1})); // x^3+x+1
    CHECK(Fq(5, 2).modulus() == std::vector<int>({2, 0, 1}));  // x^2+2
    CHECK(Fq(3, 3).modulus() == std::vector<int>({1, 2, 0, 1})); // x^3+2x+1
    CHECK(Fq(7, 2).modulus() == std::vector<int>({1, 0, 1}));  // x^2+1
}

TEST_CASE("truncated series arithmetic agrees with polynomial truncation") {
    Fq F(5, 1);
    RN R(F, 6);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(0, 4);
    for (int iter = 0; iter < 300; ++iter) {
        Poly x = R.zero(), y = R.zero();
        for (int i = 0; i < R.N; ++i) { x[i] = d(rng); y[i] = d(rng); }
        // Oracle: full polynomial product, then truncate.
        std::vector<fqe> full(2 * R.N, 0);
        for (int i = 0; i < R.N; ++i)
            for (int j = 0; j < R.N; ++j)
                full[i + j] = F.add(full[i + j], F.mul(x[i], y[j]));
        Poly want(R.N);
        for (int i = 0; i < R.N; ++i) want[i] = full[i];
        CHECK(R.mul(x, y) == want);

        int vx = R.valuation(x), vy = R.valuation(y);
        int vxy = R.valuation(R.mul(x, y));
        if (vx != VAL_INF && vy != VAL_INF && vx + vy < R.N) CHECK(vxy == vx + vy);
        if (R.is_unit(x)) CHECK(R.mul(x, R.inv(x)) == R.one());
    }
    // t^N = 0.
    CHECK(R.is_zero(R.mul(R.t_power(3), R.t_power(3))));
}

namespace {

// Valuation of the gcd of all k x k minors, computed over untruncated
// polynomials; the Smith diagonal valuations are its successive differences.
std::vector<fqe> poly_mul_full(const Fq& F, const std::vector<fqe>& a,
                               const std::vector<fqe>& b) {
    std::vector<fqe> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    return r;
}

int minor_gcd_valuation(const Fq& F, const PMat& M, int k) {
    // Determinants of k x k submatrices over F_q[t] by Laplace expansion.
    int best = VAL_INF;
    std::vector<int> rows(k), cols(k);
    std::function<void(int, int)> pick_rows, pick_cols;
    auto det_of = [&]() {
        // Expand recursively over the selected rows/cols.
        std::function<std::vector<fqe>(std::vector<int>, std::vector<int>)> det =
            [&](std::vector<int> rs, std::vector<int> cs) -> std::vector<fqe> {
            if (rs.empty()) return {1};
            std::vector<fqe> acc{0};
            for (size_t j = 0; j < cs.size(); ++j) {
                std::vector<fqe> entry(M.at(rs[0], cs[j]).begin(), M.at(rs[0], cs[j]).end());
                std::vector<int> rrest(rs.begin() + 1, rs.end());
                std::vector<int> crest = cs;
                crest.erase(crest.begin() + j);
                std::vector<fqe> sub = det(rrest, crest);
                std::vector<fqe> term = poly_mul_full(F, entry, sub);
                if (j % 2 == 1)
                    for (fqe& c : term) c = F.neg(c);
                if (acc.size() < term.size()) acc.resize(term.size(), 0);
                for (size_t i = 0; i < term.size(); ++i) acc[i] = F.add(acc[i], term[i]);
            }
            return acc;
        };
        std::vector<fqe> d = det(rows, cols);
        int v = VAL_INF;
        for (size_t i = 0; i < d.size(); ++i)
            if (d[i] != 0) { v = static_cast<int>(i); break; }
        if (v < best) best = v;
    };
    pick_cols = [&](int idx, int from) {
        if (idx == k) { det_of(); return; }
        for (int c = from; c < M.nc; ++c) { cols[idx] = c; pick_cols(idx + 1, c + 1); }
    };
    pick_rows = [&](int idx, int from) {
        if (idx == k) { pick_cols(0, 0); return; }
        for (int r = from; r < M.nr; ++r) { rows[idx] = r; pick_rows(idx + 1, r + 1); }
    };
    pick_rows(0, 0);
    return best;
}

} // namespace

TEST_CASE("smith valuations: stated examples") {
    Fq F(3, 1);
    RN R(F, 4);
    PMat I2 = pmat_from_mat(R, Mat::identity(2));
    CHECK(smith_valuations(R, I2) == std::vector<int>({0, 0}));

    PMat D(2, 2, 4);
    D.at(0, 0) = R.t_power(1);
    D.at(1, 1) = R.t_power(2);
    CHECK(smith_valuations(R, D) == std::vector<int>({1, 2}));

    PMat M(2, 2, 4);
    M.at(0, 0) = R.t_power(1);
    M.at(0, 1) = R.one();
    M.at(1, 1) = R.t_power(1);
    // gcd-of-minors oracle: gcd of entries has valuation 0, det = t^2.
    CHECK(minor_gcd_valuation(F, M, 1) == 0);
    CHECK(minor_gcd_valuation(F, M, 2) == 2);
    CHECK(smith_valuations(R, M) == std::vector<int>({0, 2}));

    PMat Z(2, 3, 4);
    CHECK(smith_valuations(R, Z) == std::vector<int>({VAL_INF, VAL_INF}));
}

TEST_CASE("smith valuations match the minor-gcd oracle and t=0 rank") {
    Fq F(3, 1);
    RN R(F, 6);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(0, 2), vd(0, 2);
    for (int iter = 0; iter < 60; ++iter) {
        PMat M(3, 3, R.N);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                // Low-valuation entries keep all minor valuations below N.
                int v = vd(rng);
                Poly p = R.zero();
                p[v] = d(rng);
                if (v + 1 < R.N) p[v + 1] = d(rng);
                M.at(i, j) = p;
            }
        auto vals = smith_valuations(R, M);
        // Oracle: successive differences of minor-gcd valuations, valid per
        // slot while the untruncated difference stays below N.
        int prev = 0;
        for (int k = 1; k <= 3; ++k) {
            int g = minor_gcd_valuation(F, M, k);
            if (g == VAL_INF) {
                CHECK(vals[k - 1] == VAL_INF);
                break;
            }
            int diff = g - prev;
            if (diff < R.N) {
                REQUIRE(vals[k - 1] == diff);
                prev = g;
            } else {
                CHECK(vals[k - 1] == VAL_INF);
                break;
            }
        }
        // Special rank equals the rank of the reduction at t = 0.
        CHECK(special_rank(R, M) == rank(F, pmat_reduce0(M)));
    }
}

TEST_CASE("smith valuations are invariant under invertible multipliers") {
    Fq F(5, 1);
    RN R(F, 5);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> d(0, 4);
    auto random_unit_mat = [&](int n) {
        for (;;) {
            Mat A(n, n);
            for (auto& v : A.a) v = d(rng);
            if (rank(F, A) != n) continue;
            PMat P = pmat_from_mat(R, A);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 1; k < R.N; ++k) P.at(i, j)[k] = d(rng);
            return P;
        }
    };
    for (int iter = 0; iter < 50; ++iter) {
        PMat M(3, 2, R.N);
        for (auto& p : M.a)
            for (int k = 0; k < R.N; ++k) p[k] = d(rng);
        auto base = smith_valuations(R, M);
        PMat L = random_unit_mat(3), Rm = random_unit_mat(2);
        CHECK(smith_valuations(R, pmat_mul(R, L, M)) == base);
        CHECK(smith_valuations(R, pmat_mul(R, M, Rm)) == base);
    }
}
