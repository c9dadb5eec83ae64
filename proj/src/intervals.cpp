#include "mkt/intervals.hpp"

#include <algorithm>
#include <stdexcept>

namespace mkt {

RatInterval ri_add(const RatInterval& a, const RatInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

RatInterval ri_sub(const RatInterval& a, const RatInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

RatInterval ri_mul(const RatInterval& a, const RatInterval& b) {
    Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

RatInterval ri_div(const RatInterval& a, const RatInterval& b) {
    if (b.lo.sign() <= 0 && b.hi.sign() >= 0)
        throw std::invalid_argument("ri_div: divisor interval contains zero");
    RatInterval inv{Rational(1) / b.hi, Rational(1) / b.lo};
    return ri_mul(a, inv);
}

RatInterval ri_scale(const Rational& c, const RatInterval& a) {
    if (c.sign() >= 0) return {c * a.lo, c * a.hi};
    return {c * a.hi, c * a.lo};
}

RatInterval ri_pow(const RatInterval& a, unsigned long k) {
    if (a.lo.sign() < 0) throw std::invalid_argument("ri_pow: negative base");
    Integer nl, dl, nh, dh;
    mpz_pow_ui(nl.get_mpz_t(), a.lo.num().get_mpz_t(), k);
    mpz_pow_ui(dl.get_mpz_t(), a.lo.den().get_mpz_t(), k);
    mpz_pow_ui(nh.get_mpz_t(), a.hi.num().get_mpz_t(), k);
    mpz_pow_ui(dh.get_mpz_t(), a.hi.den().get_mpz_t(), k);
    return {Rational(nl, dl), Rational(nh, dh)};
}

RatInterval ri_round(const RatInterval& a, unsigned bits) {
    Integer scale = Integer(1) << bits;
    Integer lo_scaled, hi_scaled;
    mpz_fdiv_q((lo_scaled.get_mpz_t()), Integer(a.lo.num() * scale).get_mpz_t(), a.lo.den().get_mpz_t());
    mpz_cdiv_q((hi_scaled.get_mpz_t()), Integer(a.hi.num() * scale).get_mpz_t(), a.hi.den().get_mpz_t());
    return {Rational(lo_scaled, scale), Rational(hi_scaled, scale)};
}

namespace {

// ln(m) for m in [1, 2) via ln(m) = 2 atanh(z), z = (m-1)/(m+1) in [0, 1/3).
// Partial sum is a lower bound; the geometric tail bound closes the interval.
RatInterval ln_reduced(const Rational& m, int terms) {
    Rational z = (m - Rational(1)) / (m + Rational(1));
    if (z.is_zero()) return {Rational(0), Rational(0)};
    Rational z2 = z * z;
    Rational sum(0);
    Rational pow = z;
    for (int i = 0; i < terms; ++i) {
        sum += pow / Rational(2L * i + 1);
        pow *= z2;
    }
    // tail = sum_{i>=terms} z^{2i+1}/(2i+1) <= z^{2T+1} / ((2T+1)(1-z^2))
    Rational tail = pow / (Rational(2L * terms + 1) * (Rational(1) - z2));
    return {Rational(2) * sum, Rational(2) * (sum + tail)};
}

} // namespace

RatInterval ln_bounds(const Rational& x, int terms) {
    if (x.sign() <= 0) throw std::invalid_argument("ln_bounds: non-positive argument");
    if (terms < 1) throw std::invalid_argument("ln_bounds: terms must be positive");
    if (x < Rational(1)) {
        RatInterval r = ln_bounds(Rational(1) / x, terms);
        return {-r.hi, -r.lo};
    }
    // x = 2^e * m with m in [1, 2)
    long e = 0;
    Rational m = x;
    while (m >= Rational(2)) {
        m /= Rational(2);
        ++e;
    }
    RatInterval lm = ln_reduced(m, terms);
    if (e == 0) return lm;
    RatInterval l2 = ln_reduced(Rational(2), terms);
    return ri_add(lm, ri_scale(Rational(e), l2));
}

RatInterval ln_bounds(const RatInterval& x, int terms) {
    return {ln_bounds(x.lo, terms).lo, ln_bounds(x.hi, terms).hi};
}

RatInterval exp_bounds(const Rational& x, int terms) {
    if (terms < 2) throw std::invalid_argument("exp_bounds: need at least 2 terms");
    if (x.sign() < 0) {
        RatInterval r = exp_bounds(-x, terms);
        return {Rational(1) / r.hi, Rational(1) / r.lo};
    }
    if (x > Rational(1)) throw std::invalid_argument("exp_bounds: |x| must be <= 1");
    Rational sum(1);
    Rational term(1);
    for (int i = 1; i < terms; ++i) {
        term *= x / Rational(long(i));
        sum += term;
    }
    // tail = sum_{i>=T} x^i/i! <= x^T/T! * 1/(1 - x/(T+1)), valid for x <= 1 < T+1
    Rational next = term * x / Rational(long(terms));
    Rational tail = next / (Rational(1) - x / Rational(long(terms) + 1));
    return {sum, sum + tail};
}

RatInterval exp_bounds(const RatInterval& x, int terms) {
    return {exp_bounds(x.lo, terms).lo, exp_bounds(x.hi, terms).hi};
}

RatInterval sqrt_bounds(const Rational& x, unsigned prec_bits) {
    if (x.sign() < 0) throw std::invalid_argument("sqrt_bounds: negative argument");
    if (x.is_zero()) return {Rational(0), Rational(0)};
    // Floor square root of x scaled by 4^prec_bits, then unscale by 2^prec_bits.
    Integer scale = Integer(1) << prec_bits;
    Integer scaled_num = x.num() * scale * scale * x.den();
    Integer root = isqrt(scaled_num); // floor sqrt(num * den * 4^p)
    Integer den_scale = x.den() * scale;
    return {Rational(root, den_scale), Rational(root + 1, den_scale)};
}

} // namespace mkt
