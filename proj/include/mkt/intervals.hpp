#pragma once

#include "mkt/rational.hpp"

namespace mkt {

/// Closed rational interval [lo, hi] certified to contain a real value.
/// Used wherever a transcendental quantity must be compared exactly
/// (logarithmic bound checks, the overlap box integral).
struct RatInterval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / Rational(2); }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

RatInterval ri_add(const RatInterval& a, const RatInterval& b);
RatInterval ri_sub(const RatInterval& a, const RatInterval& b);
RatInterval ri_mul(const RatInterval& a, const RatInterval& b);
/// b must not contain zero.
RatInterval ri_div(const RatInterval& a, const RatInterval& b);
RatInterval ri_scale(const Rational& c, const RatInterval& a);
/// Integer power, k >= 0; a must be non-negative.
RatInterval ri_pow(const RatInterval& a, unsigned long k);
/// Outward rounding to denominators of at most 2^bits. Keeps the enclosure
/// valid while stopping denominator growth through composed operations.
RatInterval ri_round(const RatInterval& a, unsigned bits);

/// Bounds on ln(x) for rational x > 0 via the atanh series with a certified
/// tail. More terms tighten the interval; ~30 terms give > 25 decimal digits.
RatInterval ln_bounds(const Rational& x, int terms);
RatInterval ln_bounds(const RatInterval& x, int terms);

/// Bounds on exp(x) for rational |x| <= 1.
RatInterval exp_bounds(const Rational& x, int terms);
RatInterval exp_bounds(const RatInterval& x, int terms);

/// Bounds on sqrt(x) for rational x >= 0, tight to 2^-prec_bits relative.
RatInterval sqrt_bounds(const Rational& x, unsigned prec_bits);

} // namespace mkt
