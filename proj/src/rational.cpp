#include "mkt/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace mkt {

Rational::Rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(const Integer& num, const Integer& den) {
    if (sgn(den) == 0) throw std::invalid_argument("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::of_double(double d) {
    if (!std::isfinite(d)) throw std::invalid_argument("Rational: non-finite double");
    Rational r;
    r.q_ = mpq_class(d);
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

Integer Rational::floor_int() const {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
    return q;
}

Rational Rational::frac() const {
    Rational f = *this;
    f.q_ -= mpq_class(floor_int());
    return f;
}

Rational Rational::abs() const {
    Rational r = *this;
    if (sgn(r.q_) < 0) r.q_ = -r.q_;
    return r;
}

std::string Rational::to_string() const {
    if (den() == 1) return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

Integer isqrt(const Integer& n) {
    if (sgn(n) < 0) throw std::invalid_argument("isqrt: negative argument");
    if (sgn(n) == 0) return 0;
    // Newton iteration from an over-estimate; strictly decreasing until fixed.
    Integer x = Integer(1) << (mpz_sizeinbase(n.get_mpz_t(), 2) / 2 + 1);
    while (true) {
        Integer y = (x + n / x) / 2;
        if (y >= x) break;
        x = y;
    }
    return x;
}

} // namespace mkt
