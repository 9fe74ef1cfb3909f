#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace strata {

/// Element of a small finite field, encoded as an integer in [0, q).
/// For extension fields the encoding is the base-p digit expansion of the
/// coefficient vector in the fixed polynomial basis 1, x, ..., x^{f-1}.
using fqe = uint32_t;

/// Arithmetic context for F_{p^f} with 2 <= p <= 17 and 1 <= f <= 3.
///
/// The modulus is the lexicographically smallest monic irreducible
/// polynomial of degree f over F_p (ordered by the integer encoding of its
/// lower coefficients), so element encodings are reproducible across runs.
/// The realized moduli are listed in the README.
class Fq {
public:
    Fq(int p, int f);

    int p() const { return p_; }
    int f() const { return f_; }
    int q() const { return q_; }

    fqe zero() const { return 0; }
    fqe one() const { return 1; }

    fqe add(fqe a, fqe b) const;
    fqe sub(fqe a, fqe b) const;
    fqe neg(fqe a) const;
    fqe mul(fqe a, fqe b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    fqe inv(fqe a) const {
        if (a == 0) throw std::domain_error("Fq::inv: zero element");
        return exp_[q_ - 1 - log_[a]];
    }
    fqe div(fqe a, fqe b) const { return mul(a, inv(b)); }
    fqe pow(fqe a, long long e) const;

    /// x -> x^p.  Iterating f times is the identity.
    fqe frobenius(fqe a) const { return pow(a, p_); }
    /// Inverse of frobenius: x -> x^{p^{f-1}}.
    fqe frobenius_inv(fqe a) const;

    /// A fixed multiplicative generator (the one used to build the tables).
    fqe generator() const { return gen_; }

    /// Monic modulus coefficients c_0..c_f (c_f = 1); for f = 1 this is x.
    const std::vector<int>& modulus() const { return modulus_; }
    std::string modulus_string() const;

    bool operator==(const Fq& o) const { return p_ == o.p_ && f_ == o.f_; }

private:
    int p_, f_, q_;
    fqe gen_;
    std::vector<int> modulus_;        // degree f, monic
    std::vector<fqe> exp_;            // size 2(q-1), exp_[i] = g^i
    std::vector<uint32_t> log_;       // size q, log_[g^i] = i

    fqe mul_slow(fqe a, fqe b) const; // polynomial multiplication mod modulus
};

/// Splits a prime power q into (p, f); throws if q is not p^f with p <= 17,
/// f <= 3.
std::pair<int, int> split_prime_power(int q);

} // namespace strata
