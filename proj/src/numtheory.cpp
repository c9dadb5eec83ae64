#include "mkt/numtheory.hpp"

#include "mkt/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace mkt {

MobiusTable sieve_mobius(long long limit) {
    if (limit < 1) throw std::invalid_argument("sieve_mobius: limit must be >= 1");
    MobiusTable t;
    t.limit = limit;
    t.mu_values.assign(static_cast<size_t>(limit), 1);
    t.mertens_prefix.assign(static_cast<size_t>(limit), 0);

    auto mu_at = [&](long long k) -> int8_t& { return t.mu_values[static_cast<size_t>(k - 1)]; };
    std::vector<bool> composite(static_cast<size_t>(limit) + 1, false);
    std::vector<long long> primes;
    for (long long i = 2; i <= limit; ++i) {
        if (!composite[static_cast<size_t>(i)]) {
            primes.push_back(i);
            mu_at(i) = -1;
        }
        for (long long p : primes) {
            if (i * p > limit) break;
            composite[static_cast<size_t>(i * p)] = true;
            if (i % p == 0) {
                mu_at(i * p) = 0;
                break;
            }
            mu_at(i * p) = static_cast<int8_t>(-mu_at(i));
        }
    }

    long long acc = 0;
    for (long long k = 1; k <= limit; ++k) {
        acc += mu_at(k);
        t.mertens_prefix[static_cast<size_t>(k - 1)] = acc;
    }
    return t;
}

long long mertens(double x, const MobiusTable& table) {
    if (x < 0) throw std::invalid_argument("mertens: x must be non-negative");
    if (x < 1) return 0;
    auto fx = static_cast<long long>(std::floor(x));
    if (fx > table.limit) throw TableTooSmall("mertens: table sieved only to " + std::to_string(table.limit));
    return table.prefix(fx);
}

int legendre_symbol(const Integer& a, const Integer& p) {
    if (p < 3 || mpz_even_p(p.get_mpz_t()))
        throw std::invalid_argument("legendre_symbol: p must be an odd prime >= 3");
    Integer b = a % p;
    if (sgn(b) < 0) b += p;
    if (sgn(b) == 0) return 0;
    Integer e = (p - 1) / 2;
    Integer r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r == 1 ? 1 : -1;
}

namespace {

Integer powm(const Integer& b, const Integer& e, const Integer& m) {
    Integer r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Tonelli-Shanks for odd prime p and quadratic residue a, 0 < a < p.
// Deterministic: the non-residue scan starts at 2 and goes up.
Integer tonelli_shanks(const Integer& a, const Integer& p) {
    if (p % 4 == 3) return powm(a, (p + 1) / 4, p);

    Integer q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    Integer z = 2;
    while (legendre_symbol(z, p) != -1) ++z;

    Integer m(static_cast<long>(s));
    Integer c = powm(z, q, p);
    Integer t = powm(a, q, p);
    Integer r = powm(a, (q + 1) / 2, p);
    while (t != 1) {
        Integer t2 = t;
        long i = 0;
        while (t2 != 1) {
            t2 = t2 * t2 % p;
            ++i;
        }
        Integer b = c;
        for (Integer j = m - i - 1; sgn(j) > 0; --j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

} // namespace

Integer sqrt_mod_prime(const Integer& a, const Integer& p) {
    if (p < 3 || mpz_even_p(p.get_mpz_t()))
        throw std::invalid_argument("sqrt_mod_prime: p must be an odd prime >= 3");
    Integer b = a % p;
    if (sgn(b) < 0) b += p;
    if (sgn(b) == 0) return 0;
    if (legendre_symbol(b, p) != 1)
        throw NoSquareRoot("sqrt_mod_prime: " + b.get_str() + " is not a residue mod " + p.get_str());

    Integer r;
    if (p < 1000) {
        for (r = 1; r * r % p != b; ++r) {}
    } else {
        r = tonelli_shanks(b, p);
    }
    // canonical smaller root
    if (r > p - r) r = p - r;
    return r;
}

Integer lift_sqrt_to_prime_square(const Integer& r, const Integer& a, const Integer& p) {
    if (a % p == 0) throw CannotLift("lift_sqrt_to_prime_square: p divides a, root is not simple");
    if ((r * r - a) % p != 0)
        throw std::invalid_argument("lift_sqrt_to_prime_square: r is not a root of a mod p");
    Integer p2 = p * p;
    // s = r + k p with k = (a - r^2)/p * (2r)^-1 (mod p)
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), Integer(2 * r).get_mpz_t(), p.get_mpz_t()) == 0)
        throw CannotLift("lift_sqrt_to_prime_square: 2r not invertible mod p");
    Integer k = (a - r * r) / p % p * inv % p;
    Integer s = (r + k * p) % p2;
    if (sgn(s) < 0) s += p2;
    // s = r (mod p) with p coprime to a, so s != 0 and 0 < s < p^2 holds
    return s;
}

ResidueClass crt_combine(const std::vector<ResidueClass>& classes) {
    ResidueClass acc{0, 1};
    for (const auto& c : classes) {
        if (sgn(c.modulus) <= 0) throw std::invalid_argument("crt_combine: modulus must be positive");
        Integer g;
        mpz_gcd(g.get_mpz_t(), acc.modulus.get_mpz_t(), c.modulus.get_mpz_t());
        if (g != 1)
            throw NonCoprimeModuli("crt_combine: moduli share factor " + g.get_str());
        Integer inv;
        mpz_invert(inv.get_mpz_t(), acc.modulus.get_mpz_t(), c.modulus.get_mpz_t());
        Integer shift = (c.residue - acc.residue) % c.modulus * inv % c.modulus;
        if (sgn(shift) < 0) shift += c.modulus;
        acc.residue += acc.modulus * shift;
        acc.modulus *= c.modulus;
    }
    return acc;
}

std::vector<Integer> primes_pm1_mod8(double Q, int count) {
    if (Q < 5) throw std::invalid_argument("primes_pm1_mod8: Q must be >= 5");
    if (count < 1) throw std::invalid_argument("primes_pm1_mod8: count must be positive");
    std::vector<Integer> out;
    out.reserve(static_cast<size_t>(count));
    Integer c(static_cast<long>(std::floor(Q)) + 1);
    const long long cap = 100'000'000;
    for (long long steps = 0; static_cast<int>(out.size()) < count; ++c, ++steps) {
        if (steps > cap)
            throw ResourceLimit("primes_pm1_mod8: scan cap exceeded");
        long rem = mpz_fdiv_ui(c.get_mpz_t(), 8);
        if ((rem == 1 || rem == 7) && is_prime(c)) out.push_back(c);
    }
    return out;
}

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // Deterministic Miller-Rabin: the 12-base set is exact for n < 3.317e24.
    Integer mr_bound("3317044064679887385961981");
    if (n < mr_bound) {
        Integer d = n - 1;
        unsigned long s = 0;
        while (mpz_even_p(d.get_mpz_t())) {
            d /= 2;
            ++s;
        }
        for (long a : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
            Integer x = powm(Integer(a), d, n);
            if (x == 1 || x == n - 1) continue;
            bool witness = true;
            for (unsigned long i = 1; i < s; ++i) {
                x = x * x % n;
                if (x == n - 1) {
                    witness = false;
                    break;
                }
            }
            if (witness) return false;
        }
        return true;
    }
    // Exact fallback; never reached at the scales this toolkit works at.
    for (Integer d = 41; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

} // namespace mkt
