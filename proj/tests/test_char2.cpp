#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "strata/char2.hpp"
#include "strata/deform.hpp"

using namespace strata;

namespace {

Mat block_A(int d) {
    Mat A(d, d);
    for (int i = 0; i < d; i += 2) {
        A.at(i, i + 1) = 1;
        A.at(i + 1, i) = 1;
    }
    return A;
}

void check_normal_form(const Fq& F, const Mat& G) {
    SymForm2 g = make_symform2(F, G);
    FormClassification cls = classify_form(g);
    Mat NF = mat_mul(F, mat_mul(F, transpose(cls.P), G), cls.P);
    if (cls.case_tag == 1) {
        CHECK(NF == Mat::identity(G.nr));
        CHECK_FALSE(quadratic_identically_zero(g));
    } else {
        CHECK(NF == block_A(G.nr));
        CHECK(quadratic_identically_zero(g));
    }
}

} // namespace

TEST_CASE("classification: stated examples") {
    Fq F(2, 1);
    SymForm2 id3 = make_symform2(F, Mat::identity(3));
    FormClassification c1 = classify_form(id3);
    CHECK(c1.case_tag == 1);
    CHECK(mat_mul(F, mat_mul(F, transpose(c1.P), id3.gram), c1.P) == Mat::identity(3));

    SymForm2 hyp = make_symform2(F, block_A(2));
    FormClassification c2 = classify_form(hyp);
    CHECK(c2.case_tag == 2);
    CHECK(mat_mul(F, mat_mul(F, transpose(c2.P), hyp.gram), c2.P) == block_A(2));

    // diag(1) + A merges to the identity form.
    Mat mixed = Mat::from_rows({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}, F);
    SymForm2 gm = make_symform2(F, mixed);
    FormClassification c3 = classify_form(gm);
    CHECK(c3.case_tag == 1);
    CHECK(mat_mul(F, mat_mul(F, transpose(c3.P), mixed), c3.P) == Mat::identity(3));
}

TEST_CASE("classification is exhaustive and exact for d <= 4 over F_2") {
    Fq F(2, 1);
    for (int d = 1; d <= 4; ++d) {
        long long checked = 0;
        std::vector<int> entries(d * (d + 1) / 2, 0);
        for (;;) {
            Mat G(d, d);
            int k = 0;
            for (int r = 0; r < d; ++r)
                for (int c = r; c < d; ++c) {
                    G.at(r, c) = static_cast<fqe>(entries[k]);
                    G.at(c, r) = static_cast<fqe>(entries[k]);
                    ++k;
                }
            if (rank(F, G) == d) {
                ++checked;
                check_normal_form(F, G);
            }
            bool more = false;
            for (size_t i = 0; i < entries.size(); ++i) {
                if (++entries[i] < 2) { more = true; break; }
                entries[i] = 0;
            }
            if (!more) break;
        }
        CHECK(checked > 0);
    }
    // Degenerate Gram matrices are rejected.
    CHECK_THROWS_AS(make_symform2(F, Mat(2, 2)), std::invalid_argument);
}

TEST_CASE("classification also works over F_4") {
    Fq F(2, 2);
    check_normal_form(F, Mat::identity(2));
    check_normal_form(F, block_A(4));
    Mat G = Mat::from_rows({{1, 2, 0}, {2, 0, 1}, {0, 1, 3}}, F);
    if (rank(F, G) == 3) check_normal_form(F, G);
}

TEST_CASE("isotropic normal basis: zero space and a line") {
    Fq F(2, 1);
    SymForm2 g3 = make_symform2(F, Mat::identity(3));
    Mat b0 = isotropic_normal_basis(g3, Subspace::zero(3));
    CHECK(mat_mul(F, mat_mul(F, transpose(b0), g3.gram), b0) == Mat::identity(3));

    Mat w(3, 1);
    w.at(0, 0) = 1;
    w.at(1, 0) = 1; // e1 + e2, isotropic for the identity form
    Subspace W(F, 3, w);
    Mat basis = isotropic_normal_basis(g3, W);
    CHECK(mat_mul(F, mat_mul(F, transpose(basis), g3.gram), basis) == Mat::identity(3));
    Mat span = mat_add(F, basis.col(0), basis.col(1));
    CHECK(Subspace(F, 3, span) == W);
}

TEST_CASE("isotropic normal basis: exhaustive over isotropic planes of I_4") {
    Fq F(2, 1);
    SymForm2 g4 = make_symform2(F, Mat::identity(4));
    long long planes = 0;
    enumerate_subspaces(F, 4, 2, [&](const Subspace& W) {
        Mat gram = mat_mul(F, mat_mul(F, transpose(W.basis), g4.gram), W.basis);
        if (!is_zero(gram)) return true;
        ++planes;
        Mat basis = isotropic_normal_basis(g4, W);
        CHECK(mat_mul(F, mat_mul(F, transpose(basis), g4.gram), basis) == Mat::identity(4));
        Mat span(4, 2);
        for (int i = 0; i < 2; ++i) {
            Mat s = mat_add(F, basis.col(2 * i), basis.col(2 * i + 1));
            for (int r = 0; r < 4; ++r) span.at(r, i) = s.at(r, 0);
        }
        CHECK(Subspace(F, 4, span) == W);
        return true;
    });
    CHECK(planes > 0);

    // Preconditions: ambient must be case 1, W isotropic.
    SymForm2 gA = make_symform2(F, block_A(2));
    CHECK_THROWS_AS(isotropic_normal_basis(gA, Subspace::zero(2)), std::invalid_argument);
    Mat noniso(4, 1);
    noniso.at(0, 0) = 1;
    CHECK_THROWS_AS(isotropic_normal_basis(g4, Subspace(F, 4, noniso)), std::invalid_argument);
}

TEST_CASE("parity emptiness in the alternating-diagonal case") {
    Fq F(2, 1);
    SUBCASE("(1,1): only l = 1 occurs") {
        ParityReport rep = parity_empty_check(F, 1, 1);
        CHECK_FALSE(rep.violations);
        CHECK(rep.counts.count({0, 0}) == 0);
        CHECK(rep.counts.at({0, 1}) > 0);
    }
    SUBCASE("(2,2): l = 1 strata empty") {
        ParityReport rep = parity_empty_check(F, 2, 2);
        CHECK_FALSE(rep.violations);
        CHECK(rep.counts.count({0, 1}) == 0);
        CHECK(rep.counts.count({1, 1}) == 0);
        CHECK(rep.counts.at({0, 2}) > 0);
        CHECK(rep.counts.at({2, 2}) > 0);
    }
    SUBCASE("(1,2): the case-2 form needs even rank") {
        CHECK_THROWS_AS(parity_empty_check(F, 1, 2), std::invalid_argument);
    }
}

TEST_CASE("identity-form smooth locus is the origin stratum at q = 2") {
    Fq F(2, 1);
    for (auto ab : {std::pair{1, 1}, {1, 2}}) {
        int a = ab.first, b = ab.second;
        PiSpace S = standard_space(F, a, b, FormCase::Char2Case1);
        enumerate_points(S, [&](const LMPoint& x) {
            StratumLabel c = invariants(S, x);
            int td = tangent_dim(S, x);
            if (c.h == 0 && c.l == 0) CHECK(td == a * b);
            else CHECK(td != a * b);
            return true;
        });
    }
}

TEST_CASE("case-2 smooth pieces have tangent dimension ab + l") {
    Fq F(2, 1);
    for (auto ab : {std::pair{1, 1}, {2, 2}}) {
        int a = ab.first, b = ab.second;
        PiSpace S = standard_space(F, a, b, FormCase::Char2Case2);
        enumerate_points(S, [&](const LMPoint& x) {
            StratumLabel c = invariants(S, x);
            int td = tangent_dim(S, x);
            if (c.l == 0) CHECK(td == a * b);
            else if (c.h >= c.l - 1) CHECK(td == a * b + c.l);
            else CHECK(td > a * b + c.l); // observed strictly bigger off the smooth pieces
            return true;
        });
    }
}
