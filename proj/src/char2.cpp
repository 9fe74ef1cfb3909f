#include "strata/char2.hpp"

namespace strata {

SymForm2 make_symform2(const Fq& F, const Mat& gram) {
    if (F.p() != 2) throw std::invalid_argument("SymForm2: needs p = 2");
    if (gram.nr != gram.nc || transpose(gram) != gram)
        throw std::invalid_argument("SymForm2: Gram must be symmetric");
    if (rank(F, gram) != gram.nr) throw std::invalid_argument("SymForm2: Gram degenerate");
    return SymForm2{&F, gram};
}

bool quadratic_identically_zero(const SymForm2& g) {
    // q(x) = sum x_i^2 G_ii in characteristic 2, so q = 0 iff diag(G) = 0.
    for (int i = 0; i < g.dim(); ++i)
        if (g.gram.at(i, i) != 0) return false;
    return true;
}

namespace {

// Vectors of F_q^d in lexicographic coordinate order, last coordinate
// fastest; starts at zero, next() advances.
struct VecIter {
    int q, d;
    std::vector<int> v;
    explicit VecIter(int q_, int d_) : q(q_), d(d_), v(d_, 0) {}
    bool next() {
        for (int i = d - 1; i >= 0; --i) {
            if (++v[i] < q) return true;
            v[i] = 0;
        }
        return false;
    }
    Mat col() const {
        Mat m(d, 1);
        for (int i = 0; i < d; ++i) m.at(i, 0) = static_cast<fqe>(v[i]);
        return m;
    }
};

fqe form_val(const Fq& F, const Mat& G, const Mat& x, const Mat& y) {
    return mat_mul(F, mat_mul(F, transpose(x), G), y).at(0, 0);
}

Mat drop_last_col(const Mat& M) {
    Mat R(M.nr, M.nc - 1);
    for (int i = 0; i < M.nr; ++i)
        for (int j = 0; j + 1 < M.nc; ++j) R.at(i, j) = M.at(i, j);
    return R;
}

} // namespace

FormClassification classify_form(const SymForm2& g) {
    const Fq& F = *g.F;
    int d = g.dim();
    const Mat& G = g.gram;

    std::vector<Mat> norm1;  // chosen vectors of norm 1
    std::vector<Mat> apairs; // hyperbolic pairs with q = 0
    Mat chosen(d, 0);

    auto orthogonal_to_chosen = [&](const Mat& v) {
        for (int j = 0; j < chosen.nc; ++j)
            if (form_val(F, G, chosen.col(j), v) != 0) return false;
        return true;
    };

    while (chosen.nc < d) {
        // Smallest vector of nonzero norm in the complement of the span.
        bool found = false;
        VecIter it(F.q(), d);
        while (it.next()) {
            Mat v = it.col();
            if (!orthogonal_to_chosen(v)) continue;
            if (rank(F, hconcat(chosen, v)) == chosen.nc) continue;
            fqe n = form_val(F, G, v, v);
            if (n == 0) continue;
            fqe s = F.inv(F.frobenius_inv(n)); // 1/sqrt(n)
            Mat w = mat_scal(F, s, v);
            chosen = hconcat(chosen, w);
            norm1.push_back(w);
            found = true;
            break;
        }
        if (found) continue;
        // Everything left is isotropic: hyperbolic pair.
        Mat v1(d, 1);
        bool got1 = false;
        VecIter it1(F.q(), d);
        while (it1.next()) {
            Mat v = it1.col();
            if (!orthogonal_to_chosen(v)) continue;
            if (rank(F, hconcat(chosen, v)) == chosen.nc) continue;
            v1 = v;
            got1 = true;
            break;
        }
        if (!got1) throw std::logic_error("classify_form: complement exhausted");
        Mat v2(d, 1);
        bool got2 = false;
        VecIter it2(F.q(), d);
        while (it2.next()) {
            Mat v = it2.col();
            if (!orthogonal_to_chosen(v)) continue;
            fqe c = form_val(F, G, v1, v);
            if (c == 0) continue;
            v = mat_scal(F, F.inv(c), v);
            if (form_val(F, G, v, v) != 0) continue;
            v2 = v;
            got2 = true;
            break;
        }
        if (!got2) throw std::logic_error("classify_form: no hyperbolic partner");
        chosen = hconcat(chosen, v1);
        chosen = hconcat(chosen, v2);
        apairs.push_back(hconcat(v1, v2));
    }

    // Merge a norm-1 vector u with an A-pair (v1, v2) into the orthonormal
    // triple (u + v2, u + v1 + v2, u + v1).
    while (!apairs.empty() && !norm1.empty()) {
        Mat u = norm1.back();
        norm1.pop_back();
        Mat pair = apairs.back();
        apairs.pop_back();
        Mat v1 = pair.col(0), v2 = pair.col(1);
        norm1.push_back(mat_add(F, u, v2));
        norm1.push_back(mat_add(F, mat_add(F, u, v1), v2));
        norm1.push_back(mat_add(F, u, v1));
    }

    FormClassification out;
    if (apairs.empty()) {
        out.case_tag = 1;
        out.P = Mat(d, 0);
        for (const Mat& v : norm1) out.P = hconcat(out.P, v);
    } else {
        if (!norm1.empty()) throw std::logic_error("classify_form: unmerged mixed blocks");
        out.case_tag = 2;
        out.P = Mat(d, 0);
        for (const Mat& pr : apairs) out.P = hconcat(out.P, pr);
    }
    // The normal form must be reproduced exactly.
    Mat NF = mat_mul(F, mat_mul(F, transpose(out.P), G), out.P);
    if (out.case_tag == 1) {
        if (NF != Mat::identity(d)) throw std::logic_error("classify_form: case-1 form not I");
    } else {
        Mat A(d, d);
        for (int i = 0; i < d; i += 2) {
            A.at(i, i + 1) = 1;
            A.at(i + 1, i) = 1;
        }
        if (NF != A) throw std::logic_error("classify_form: case-2 form not block A");
    }
    return out;
}

namespace {

// Full backtracking: dual partners g_1..g_h for the isotropic columns of Wb
// (pairings delta_ij, norms 1, mutually orthogonal), then an orthonormal
// completion; partner choices are revisited if the completion fails.
struct NormalBasisSearch {
    const Fq& F;
    const Mat& G;
    const Mat& Wb;
    int d, h;
    std::vector<Mat> gs;
    Mat result;

    NormalBasisSearch(const Fq& F_, const Mat& G_, const Mat& Wb_)
        : F(F_), G(G_), Wb(Wb_), d(G_.nr), h(Wb_.nc) {}

    bool partners(int i) {
        if (i == h) {
            Mat basis(d, 0);
            for (int k = 0; k < h; ++k) {
                basis = hconcat(basis, mat_add(F, Wb.col(k), gs[k]));
                basis = hconcat(basis, gs[k]);
            }
            if (complete(basis)) {
                result = basis;
                return true;
            }
            return false;
        }
        VecIter it(F.q(), d);
        while (it.next()) {
            Mat v = it.col();
            bool ok = true;
            for (int j = 0; j < h && ok; ++j) {
                fqe want = (j == i) ? 1 : 0;
                if (form_val(F, G, Wb.col(j), v) != want) ok = false;
            }
            if (!ok || form_val(F, G, v, v) != 1) continue;
            for (size_t j = 0; j < gs.size() && ok; ++j)
                if (form_val(F, G, gs[j], v) != 0) ok = false;
            if (!ok) continue;
            gs.push_back(v);
            if (partners(i + 1)) return true;
            gs.pop_back();
        }
        return false;
    }

    bool complete(Mat& basis) {
        if (basis.nc == d) return true;
        VecIter it(F.q(), d);
        while (it.next()) {
            Mat v = it.col();
            if (form_val(F, G, v, v) != 1) continue;
            bool orth = true;
            for (int j = 0; j < basis.nc; ++j)
                if (form_val(F, G, basis.col(j), v) != 0) { orth = false; break; }
            if (!orth) continue;
            if (rank(F, hconcat(basis, v)) == basis.nc) continue;
            basis = hconcat(basis, v);
            if (complete(basis)) return true;
            basis = drop_last_col(basis);
        }
        return false;
    }
};

} // namespace

Mat isotropic_normal_basis(const SymForm2& g, const Subspace& W) {
    const Fq& F = *g.F;
    int d = g.dim();
    if (quadratic_identically_zero(g))
        throw std::invalid_argument("isotropic_normal_basis: needs a case-1 form");
    if (W.ambient != d) throw std::invalid_argument("isotropic_normal_basis: ambient mismatch");
    int h = W.dim();
    if (2 * h > d) throw std::invalid_argument("isotropic_normal_basis: dim W > d/2");
    Mat iso = mat_mul(F, mat_mul(F, transpose(W.basis), g.gram), W.basis);
    if (!is_zero(iso)) throw std::invalid_argument("isotropic_normal_basis: W not isotropic");

    NormalBasisSearch search(F, g.gram, W.basis);
    if (!search.partners(0))
        throw std::logic_error("isotropic_normal_basis: search exhausted");
    const Mat& basis = search.result;
    Mat NF = mat_mul(F, mat_mul(F, transpose(basis), g.gram), basis);
    if (NF != Mat::identity(d)) throw std::logic_error("isotropic_normal_basis: Gram not I");
    Mat span(d, h);
    for (int i = 0; i < h; ++i) {
        Mat s = mat_add(F, basis.col(2 * i), basis.col(2 * i + 1));
        for (int r = 0; r < d; ++r) span.at(r, i) = s.at(r, 0);
    }
    if (Subspace(F, d, span) != W)
        throw std::logic_error("isotropic_normal_basis: W not in normal position");
    return basis;
}

ParityReport parity_empty_check(const Fq& F, int a, int b, long long max_points) {
    PiSpace S = standard_space(F, a, b, FormCase::Char2Case2);
    ParityReport rep;
    enumerate_points(S, [&](const LMPoint& x) {
        StratumLabel c = invariants(S, x);
        ++rep.counts[c];
        if (((c.l - a) % 2 + 2) % 2 != 0) rep.violations = true;
        return true;
    }, max_points);
    return rep;
}

} // namespace strata
