#include "strata/field.hpp"

#include <sstream>

namespace strata {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Evaluate a monic degree-f polynomial with lower coefficients c at x over F_p.
int eval_mod_p(const std::vector<int>& c, int f, int x, int p) {
    long long v = 1; // leading coefficient
    for (int i = f - 1; i >= 0; --i) v = (v * x + c[i]) % p;
    return static_cast<int>(v);
}

} // namespace

Fq::Fq(int p, int f) : p_(p), f_(f) {
    if (!is_prime(p) || p > 17) throw std::invalid_argument("Fq: p must be a prime <= 17");
    if (f < 1 || f > 3) throw std::invalid_argument("Fq: f must be in [1,3]");
    q_ = 1;
    for (int i = 0; i < f; ++i) q_ *= p;

    // Lexicographically smallest monic irreducible of degree f.  For f in
    // {2,3} irreducibility over F_p is equivalent to having no root.
    modulus_.assign(f + 1, 0);
    modulus_[f] = 1;
    if (f > 1) {
        bool found = false;
        for (int code = 0; code < q_ && !found; ++code) {
            std::vector<int> c(f);
            int t = code;
            for (int i = 0; i < f; ++i) { c[i] = t % p; t /= p; }
            bool has_root = false;
            for (int x = 0; x < p && !has_root; ++x)
                if (eval_mod_p(c, f, x, p) == 0) has_root = true;
            if (!has_root) {
                for (int i = 0; i < f; ++i) modulus_[i] = c[i];
                found = true;
            }
        }
        if (!found) throw std::logic_error("Fq: no irreducible polynomial found");
    }

    // Discrete-log tables over a fixed generator.
    log_.assign(q_, 0);
    exp_.assign(2 * (q_ - 1), 0);
    gen_ = 0;
    for (fqe g = 2; g < static_cast<fqe>(q_); ++g) {
        fqe x = 1;
        int order = 0;
        do {
            x = mul_slow(x, g);
            ++order;
        } while (x != 1);
        if (order == q_ - 1) { gen_ = g; break; }
    }
    if (gen_ == 0) {
        if (q_ == 2) gen_ = 1; // trivial group
        else throw std::logic_error("Fq: no generator found");
    }
    fqe x = 1;
    for (int i = 0; i < q_ - 1; ++i) {
        exp_[i] = x;
        exp_[i + (q_ - 1)] = x;
        log_[x] = i;
        x = mul_slow(x, gen_);
    }
}

fqe Fq::add(fqe a, fqe b) const {
    if (f_ == 1) {
        uint32_t s = a + b;
        return s >= static_cast<uint32_t>(p_) ? s - p_ : s;
    }
    fqe r = 0, mult = 1;
    for (int i = 0; i < f_; ++i) {
        uint32_t da = a % p_, db = b % p_;
        a /= p_; b /= p_;
        uint32_t s = da + db;
        if (s >= static_cast<uint32_t>(p_)) s -= p_;
        r += s * mult;
        mult *= p_;
    }
    return r;
}

fqe Fq::sub(fqe a, fqe b) const { return add(a, neg(b)); }

fqe Fq::neg(fqe a) const {
    if (f_ == 1) return a == 0 ? 0 : p_ - a;
    fqe r = 0, mult = 1;
    for (int i = 0; i < f_; ++i) {
        uint32_t d = a % p_;
        a /= p_;
        r += (d == 0 ? 0 : p_ - d) * mult;
        mult *= p_;
    }
    return r;
}

fqe Fq::mul_slow(fqe a, fqe b) const {
    if (f_ == 1) return static_cast<fqe>((static_cast<uint64_t>(a) * b) % p_);
    // Coefficient vectors.
    int ca[3] = {0, 0, 0}, cb[3] = {0, 0, 0};
    fqe t = a;
    for (int i = 0; i < f_; ++i) { ca[i] = t % p_; t /= p_; }
    t = b;
    for (int i = 0; i < f_; ++i) { cb[i] = t % p_; t /= p_; }
    int prod[5] = {0, 0, 0, 0, 0};
    for (int i = 0; i < f_; ++i)
        for (int j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
    // Reduce modulo the monic modulus.
    for (int d = 2 * (f_ - 1); d >= f_; --d) {
        int c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (int i = 0; i < f_; ++i)
            prod[d - f_ + i] = ((prod[d - f_ + i] - c * modulus_[i]) % p_ + p_ * p_ * 18) % p_;
    }
    fqe r = 0, mult = 1;
    for (int i = 0; i < f_; ++i) { r += prod[i] * mult; mult *= p_; }
    return r;
}

fqe Fq::pow(fqe a, long long e) const {
    if (a == 0) {
        if (e == 0) return 1;
        if (e < 0) throw std::domain_error("Fq::pow: negative power of zero");
        return 0;
    }
    long long m = q_ - 1;
    long long k = e % m;
    if (k < 0) k += m;
    long long idx = (static_cast<long long>(log_[a]) * k) % m;
    return exp_[idx];
}

fqe Fq::frobenius_inv(fqe a) const {
    long long e = 1;
    for (int i = 0; i < f_ - 1; ++i) e *= p_;
    return pow(a, e);
}

std::string Fq::modulus_string() const {
    std::ostringstream os;
    os << "x^" << f_;
    for (int i = f_ - 1; i >= 0; --i) {
        if (modulus_[i] == 0) continue;
        os << " + ";
        if (modulus_[i] != 1 || i == 0) os << modulus_[i];
        if (i >= 1) {
            if (modulus_[i] != 1) os << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::pair<int, int> split_prime_power(int q) {
    for (int p = 2; p <= 17; ++p) {
        if (!is_prime(p)) continue;
        int v = q, f = 0;
        while (v % p == 0) { v /= p; ++f; }
        if (v == 1 && f >= 1 && f <= 3) return {p, f};
    }
    throw std::invalid_argument("not a supported prime power: " + std::to_string(q));
}

} // namespace strata
