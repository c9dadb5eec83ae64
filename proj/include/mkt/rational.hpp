#pragma once

#include <gmpxx.h>

#include <string>

namespace mkt {

using Integer = mpz_class;

/// Exact fraction of unbounded integers, always kept in lowest terms with a
/// positive denominator. All arithmetic is exact; doubles are a view only.
class Rational {
  public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {} // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    explicit Rational(const Integer& n) : q_(n) {}
    Rational(const Integer& num, const Integer& den);

    /// Exact binary expansion of a finite double.
    static Rational of_double(double d);

    const Integer& num() const { return q_.get_num(); }
    const Integer& den() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }

    Integer floor_int() const;
    /// this - floor(this), in [0, 1).
    Rational frac() const;
    Rational abs() const;

    /// Truncated double view (standard GMP conversion).
    double to_double() const { return q_.get_d(); }

    std::string to_string() const; // "num/den", or "num" when den == 1

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.q_ = -a.q_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  private:
    mpq_class q_;
};

/// Integer square root by Newton iteration: returns s with s^2 <= n < (s+1)^2.
Integer isqrt(const Integer& n);

} // namespace mkt
