#include "strata/hasse.hpp"

namespace strata {

namespace {

// Frobenius twist of a subspace: entrywise p-th power of a basis.
Subspace twist(const Fq& F, const Subspace& U) {
    Subspace out;
    out.ambient = U.ambient;
    out.basis = col_echelon(F, mat_frobenius(F, U.basis));
    return out;
}

Subspace untwist(const Fq& F, const Subspace& U) {
    Subspace out;
    out.ambient = U.ambient;
    out.basis = col_echelon(F, mat_frobenius_inv(F, U.basis));
    return out;
}

void split_blocks(const PiSpace& S, const Mat& V, Mat& T, Mat& Sm) {
    int m = S.m;
    T = Mat(m, m);
    Sm = Mat(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            T.at(i, j) = V.at(i, j);
            Sm.at(i, j) = V.at(m + i, j);
        }
}

} // namespace

void validate_datum(DieudonneDatum& d) {
    const Fq& F = *d.S.F;
    int m = d.S.m;
    if (d.S.a != 1) throw std::invalid_argument("datum: signature must be (1, n)");
    validate_point(d.S, d.x);
    if (d.V.nr != 2 * m || d.V.nc != 2 * m) throw std::invalid_argument("datum: V shape");
    // Semilinear commutation with the F_p-rational Pi.
    if (mat_mul(F, d.V, d.S.Pi) != mat_mul(F, d.S.Pi, d.V))
        throw std::invalid_argument("datum: V does not commute with Pi");
    // Block structure [[T, 0], [S, T]].
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (d.V.at(i, m + j) != 0)
                throw std::invalid_argument("datum: V upper-right block nonzero");
            if (d.V.at(m + i, m + j) != d.V.at(i, j))
                throw std::invalid_argument("datum: V diagonal blocks differ");
        }
    if (rank(F, d.V) != m) throw std::invalid_argument("datum: rank V != m");
    Subspace im(F, 2 * m, d.V);
    if (!(im == twist(F, d.x.omega)))
        throw std::invalid_argument("datum: image of V is not the twist of omega");
    Subspace kerV = untwist(F, Subspace(F, 2 * m, nullspace(F, d.V)));
    Mat iso = mat_mul(F, mat_mul(F, transpose(kerV.basis), d.S.G), kerV.basis);
    if (!is_zero(iso)) throw std::invalid_argument("datum: ker V not totally isotropic");

    Mat T, Sm;
    split_blocks(d.S, d.V, T, Sm);
    bool m_zero = is_zero(mat_mul(F, d.S.Pi, d.x.omega.basis)); // h = 0
    d.unit = 0;
    if (m_zero) {
        if (!is_zero(T))
            throw std::invalid_argument("datum: T block nonzero although Pi omega = 0");
        // S^T Q S = u Q for a unit u: the adjoint composition is u * id.
        Mat lhs = mat_mul(F, mat_mul(F, transpose(Sm), d.S.Q), Sm);
        fqe u = 0;
        for (int i = 0; i < m && u == 0; ++i)
            for (int j = 0; j < m && u == 0; ++j)
                if (d.S.Q.at(i, j) != 0) u = F.div(lhs.at(i, j), d.S.Q.at(i, j));
        if (u == 0 || lhs != mat_scal(F, u, d.S.Q))
            throw std::invalid_argument("datum: restriction of V to ker Pi is not a similitude");
        d.unit = u;
    }
}

bool is_valid_datum(DieudonneDatum& d) {
    try {
        validate_datum(d);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

Subspace conjugate_F(const DieudonneDatum& d, int i) {
    const Fq& F = *d.S.F;
    if (i != 1 && i != 2) throw std::invalid_argument("conjugate_F: i must be 1 or 2");
    Subspace wi = (i == 1) ? d.x.omega1 : omega2(d.S, d.x);
    Subspace pre = preimage_under(F, d.V, twist(F, wi)); // {y : V y in twist}
    Subspace preE = untwist(F, pre);                     // {x : V x^(p) in twist}
    Subspace Fi = image_under_pi(d.S, preE);
    int want = (i == 1) ? 1 : d.S.b;
    if (Fi.dim() != want)
        throw std::invalid_argument("conjugate_F: rank of F_i degenerates (datum invariant)");
    return Fi;
}

Invariants4 invariants4(const DieudonneDatum& d) {
    const Fq& F = *d.S.F;
    StratumLabel c = invariants(d.S, d.x);
    Invariants4 out;
    out.b_nonzero = (c.l == 0);
    out.m_nonzero = (c.h == 1);
    Subspace F1 = conjugate_F(d, 1);
    Subspace F2 = conjugate_F(d, 2);
    out.hasse1_zero = (F1 == d.x.omega1);
    out.hasse2_zero = subspace_leq(F, d.x.omega1, F2);
    return out;
}

const char* stratum9_name(Stratum9 s) {
    switch (s) {
        case Stratum9::Xord: return "Xord";
        case Stratum9::R1: return "R1";
        case Stratum9::R2: return "R2";
        case Stratum9::B0: return "B0";
        case Stratum9::B1: return "B1";
        case Stratum9::B2: return "B2";
        case Stratum9::P0: return "P0";
        case Stratum9::P1: return "P1";
        case Stratum9::P2: return "P2";
    }
    return "?";
}

StratumLabel coarse_of(Stratum9 s) {
    switch (s) {
        case Stratum9::Xord:
        case Stratum9::R1:
        case Stratum9::R2: return {1, 1};
        case Stratum9::B0:
        case Stratum9::B1:
        case Stratum9::B2: return {0, 0};
        default: return {0, 1};
    }
}

Stratum9 stratum9(const DieudonneDatum& d) {
    Invariants4 v = invariants4(d);
    if (v.m_nonzero && v.b_nonzero)
        throw std::logic_error("stratum9: b and m simultaneously nonzero");
    if (v.m_nonzero) {
        if (!v.hasse2_zero) {
            if (v.hasse1_zero)
                throw std::logic_error("stratum9: hasse1 = 0 with hasse2 != 0 and b = 0");
            return Stratum9::Xord;
        }
        if (v.hasse1_zero) return Stratum9::R2;
        return Stratum9::R1;
    }
    if (v.b_nonzero) {
        if (v.hasse1_zero && v.hasse2_zero)
            throw std::logic_error("stratum9: both hasse invariants vanish with b != 0");
        if (v.hasse1_zero) return Stratum9::B2;
        if (v.hasse2_zero) return Stratum9::B1;
        return Stratum9::B0;
    }
    if (!v.hasse2_zero) {
        if (v.hasse1_zero)
            throw std::logic_error("stratum9: hasse1 = 0 with hasse2 != 0 and b = 0");
        return Stratum9::P0;
    }
    if (v.hasse1_zero) return Stratum9::P2;
    return Stratum9::P1;
}

std::map<Stratum9, std::set<Stratum9>> poset9(int n) {
    if (n < 1) throw std::invalid_argument("poset9: n >= 1");
    using S9 = Stratum9;
    std::map<S9, std::set<S9>> cl;
    if (n == 1) {
        cl[S9::Xord] = {S9::Xord, S9::P0};
        cl[S9::R2] = {S9::R2, S9::P2};
        cl[S9::B0] = {S9::B0, S9::B1, S9::B2, S9::P0, S9::P2};
        cl[S9::B1] = {S9::B1};
        cl[S9::B2] = {S9::B2};
        cl[S9::P0] = {S9::P0};
        cl[S9::P2] = {S9::P2};
        return cl;
    }
    cl[S9::Xord] = {S9::Xord, S9::R1, S9::R2, S9::P0, S9::P1, S9::P2};
    cl[S9::R1] = {S9::R1, S9::R2, S9::P1, S9::P2};
    cl[S9::R2] = {S9::R2, S9::P2};
    cl[S9::B0] = {S9::B0, S9::B1, S9::B2, S9::P0, S9::P1, S9::P2};
    cl[S9::B1] = {S9::B1, S9::P1, S9::P2};
    cl[S9::B2] = {S9::B2};
    cl[S9::P0] = {S9::P0, S9::P1, S9::P2};
    cl[S9::P1] = {S9::P1, S9::P2};
    cl[S9::P2] = {S9::P2};
    if (n == 2) {
        cl.erase(S9::R1);
        cl.erase(S9::P1);
        for (auto& [k, v] : cl) {
            v.erase(S9::R1);
            v.erase(S9::P1);
        }
    }
    return cl;
}

std::vector<std::pair<Stratum9, Stratum9>> poset9_edges(int n) {
    std::vector<std::pair<Stratum9, Stratum9>> edges;
    for (const auto& [s, cs] : poset9(n))
        for (Stratum9 t : cs)
            if (t != s) edges.push_back({s, t});
    return edges;
}

// ---------------------------------------------------------------------------
// Randomized generation.

namespace {

Mat rand_vec(const Fq& F, int d, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dist(0, F.q() - 1);
    Mat v(d, 1);
    for (int i = 0; i < d; ++i) v.at(i, 0) = static_cast<fqe>(dist(rng));
    return v;
}

fqe qval(const Fq& F, const Mat& Q, const Mat& x, const Mat& y) {
    return mat_mul(F, mat_mul(F, transpose(x), Q), y).at(0, 0);
}

// Builds k columns inside colspan(C) with prescribed Gram targets for the
// form Q, by rejection sampling against the affine-linear constraints from
// earlier columns.  Returns false after a bounded number of tries.
bool build_with_gram(const Fq& F, const Mat& Q, const Mat& C, const Mat& target,
                     std::mt19937_64& rng, int tries, Mat& out) {
    int k = target.nr;
    out = Mat(Q.nr, 0);
    for (int i = 0; i < k; ++i) {
        bool placed = false;
        for (int t = 0; t < tries && !placed; ++t) {
            Mat w = mat_mul(F, C, rand_vec(F, C.nc, rng));
            bool ok = true;
            for (int j = 0; j < i && ok; ++j)
                if (qval(F, Q, out.col(j), w) != target.at(j, i)) ok = false;
            if (!ok || qval(F, Q, w, w) != target.at(i, i)) continue;
            Mat ext = hconcat(out, w);
            if (rank(F, ext) != i + 1) continue;
            out = ext;
            placed = true;
        }
        if (!placed) return false;
    }
    return true;
}

// Random unit.
fqe rand_unit(const Fq& F, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dist(1, F.q() - 1);
    return static_cast<fqe>(dist(rng));
}

} // namespace

DieudonneDatum conjugate_datum(const DieudonneDatum& d, std::mt19937_64& rng) {
    const Fq& F = *d.S.F;
    int m = d.S.m;
    // g = [[A, 0], [B, A]] with A^T Q A = Q and A^T Q B symmetric.
    Mat A;
    for (;;) {
        if (build_with_gram(F, d.S.Q, Mat::identity(m), d.S.Q, rng, 64, A)) break;
    }
    // B = (A^T Q)^{-1} S0 for random symmetric S0.
    Mat S0(m, m);
    std::uniform_int_distribution<int> dist(0, F.q() - 1);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            fqe v = static_cast<fqe>(dist(rng));
            S0.at(i, j) = v;
            S0.at(j, i) = v;
        }
    Mat B = mat_mul(F, inverse(F, mat_mul(F, transpose(A), d.S.Q)), S0);
    Mat g(2 * m, 2 * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            g.at(i, j) = A.at(i, j);
            g.at(m + i, m + j) = A.at(i, j);
            g.at(m + i, j) = B.at(i, j);
        }
    DieudonneDatum out;
    out.S = d.S;
    out.x.omega = image_under(F, g, d.x.omega);
    out.x.omega1 = image_under(F, g, d.x.omega1);
    Mat gs = mat_frobenius(F, g);
    out.V = mat_mul(F, mat_mul(F, gs, d.V), inverse(F, gs));
    validate_datum(out);
    return out;
}

SearchStats search_examples(const Fq& F, int n, long long target, long long max_trials,
                            uint64_t seed,
                            const std::function<void(const DieudonneDatum&)>& fn) {
    if (n < 1 || n > 3) throw std::invalid_argument("search_examples: n in [1,3]");
    if (F.q() > 9) throw std::invalid_argument("search_examples: q <= 9");
    int a = 1, b = n, m = n + 1;
    FormCase fc = (F.p() == 2) ? FormCase::Char2Case1 : FormCase::OddChar;
    PiSpace S = standard_space(F, a, b, fc);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(0, F.q() - 1);
    SearchStats stats;

    Subspace kerPi = S.ker_pi();
    auto rand_fvec = [&]() {
        Mat v(m, 1);
        for (int i = 0; i < m; ++i) v.at(i, 0) = static_cast<fqe>(dist(rng));
        return v;
    };

    while (stats.accepted < target && stats.trials < max_trials) {
        ++stats.trials;
        try {
            bool want_h1 = (rng() & 1) != 0;
            DieudonneDatum d;
            d.S = S;
            if (!want_h1) {
                // omega = ker Pi; omega1 a random line; V = [[0,0],[S,0]]
                // with S a similitude.
                Mat z = rand_fvec();
                if (is_zero(z)) continue;
                d.x.omega = kerPi;
                d.x.omega1 = Subspace(F, 2 * m, S.embed_f(z));
                fqe u = rand_unit(F, rng);
                Mat Sm;
                if (!build_with_gram(F, S.Q, Mat::identity(m), mat_scal(F, u, S.Q), rng, 64, Sm))
                    continue;
                d.V = Mat(2 * m, 2 * m);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) d.V.at(m + i, j) = Sm.at(i, j);
            } else {
                // Pi omega = omega1 = <z> for an isotropic z; omega[pi] is
                // its modified-orthogonal hyperplane.
                Mat z = rand_fvec();
                if (is_zero(z) || qval(F, S.Q, z, z) != 0) continue;
                Subspace w1(F, 2 * m, S.embed_f(z));
                Subspace wpi = orthogonal_modified(S, w1); // contains w1
                // e-lift of z.
                Mat lift(2 * m, 1);
                for (int i = 0; i < m; ++i) lift.at(i, 0) = z.at(i, 0);
                d.x.omega = Subspace(F, 2 * m, hconcat(wpi.basis, lift));
                d.x.omega1 = w1;
                if (d.x.omega.dim() != m) continue;

                // T = z^(p) phi with a random functional phi; S maps ker(phi)
                // into omega[pi]^(p) as a twisted similitude and the
                // complement vector anywhere in omega[pi]^(p).
                Mat zp = mat_frobenius(F, z);
                Mat phiv = rand_vec(F, m, rng);
                Mat phi = mat_mul(F, transpose(phiv), S.Q); // 1 x m
                if (is_zero(phi)) continue;
                Mat U = nullspace(F, phi); // m x (m-1), basis of ker T
                // f-coordinates of omega[pi] and its twist.
                Mat wpif(m, m - 1);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m - 1; ++j) wpif.at(i, j) = wpi.basis.at(m + i, j);
                Mat wpif_p = mat_frobenius(F, wpif);
                // Prescribed Gram: {S u_i, S u_j} = u * ({u_i, u_j})^p.
                fqe u = rand_unit(F, rng);
                Mat tgt(m - 1, m - 1);
                for (int i = 0; i < m - 1; ++i)
                    for (int j = 0; j < m - 1; ++j)
                        tgt.at(i, j) =
                            F.mul(u, F.frobenius(qval(F, S.Q, U.col(i), U.col(j))));
                Mat W;
                if (!build_with_gram(F, S.Q, wpif_p, tgt, rng, 64, W)) continue;
                // Complement vector u0 with phi(u0) = 1.
                Mat u0;
                {
                    Mat one(1, 1);
                    one.at(0, 0) = 1;
                    if (!solve(F, phi, one, u0)) continue;
                }
                Mat su0 = mat_mul(F, wpif_p, rand_vec(F, m - 1, rng));
                // Assemble S on the basis (U | u0).
                Mat basis = hconcat(U, u0);
                Mat images = hconcat(W, su0);
                Mat Sm = mat_mul(F, images, inverse(F, basis));
                Mat T = mat_mul(F, zp, phi); // rank-1
                d.V = Mat(2 * m, 2 * m);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) {
                        d.V.at(i, j) = T.at(i, j);
                        d.V.at(m + i, m + j) = T.at(i, j);
                        d.V.at(m + i, j) = Sm.at(i, j);
                    }
            }
            validate_datum(d);
            conjugate_F(d, 1);
            conjugate_F(d, 2);
            // Randomize the frame by a pairing- and Pi-preserving
            // automorphism.
            DieudonneDatum dc = conjugate_datum(d, rng);
            ++stats.accepted;
            ++stats.label_counts[stratum9(dc)];
            if (fn) fn(dc);
        } catch (const std::exception&) {
            // Rejected draw.
        }
    }
    return stats;
}

} // namespace strata
