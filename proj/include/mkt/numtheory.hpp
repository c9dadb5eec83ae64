#pragma once

#include "mkt/rational.hpp"

#include <cstdint>
#include <vector>

namespace mkt {

/// Sieved Mobius values mu(1..limit) with prefix sums for the Mertens
/// function M(x). Immutable after construction; safe to share across threads.
struct MobiusTable {
    long long limit = 0;
    std::vector<int8_t> mu_values;           // index k-1 holds mu(k)
    std::vector<long long> mertens_prefix;   // index k-1 holds sum of mu(1..k)

    int mu(long long k) const { return mu_values[static_cast<size_t>(k - 1)]; }
    long long prefix(long long k) const { return mertens_prefix[static_cast<size_t>(k - 1)]; }
};

/// Linear sieve of mu(1..limit). limit >= 1.
MobiusTable sieve_mobius(long long limit);

/// M(x) = sum of mu(m) over m <= x; 0 for x < 1. Requires floor(x) <= table.limit.
long long mertens(double x, const MobiusTable& table);

/// Residue class `residue` mod `modulus`, with 0 <= residue < modulus.
struct ResidueClass {
    Integer residue;
    Integer modulus;
};

/// Legendre symbol (a/p) for odd prime p, by Euler's criterion:
/// 0 if p | a, +1 for a nonzero quadratic residue, -1 otherwise.
int legendre_symbol(const Integer& a, const Integer& p);

/// Least non-negative square root of a mod odd prime p: returns r <= (p-1)/2
/// with r^2 = a (mod p), or 0 when p | a. Throws NoSquareRoot for non-residues.
/// Exhaustive search below a small cutoff, Tonelli-Shanks above it.
Integer sqrt_mod_prime(const Integer& a, const Integer& p);

/// One Hensel step: given r^2 = a (mod p) with p not dividing a, returns s with
/// s^2 = a (mod p^2), s = r (mod p), normalized to 0 < s < p^2.
Integer lift_sqrt_to_prime_square(const Integer& r, const Integer& a, const Integer& p);

/// Combined class mod the product of all moduli; moduli must be pairwise
/// coprime. The empty sequence combines to 0 mod 1.
ResidueClass crt_combine(const std::vector<ResidueClass>& classes);

/// The `count` smallest primes p > Q with p = 1 or 7 (mod 8), ascending. Q >= 5.
std::vector<Integer> primes_pm1_mod8(double Q, int count);

/// Exact primality verdict. Deterministic Miller-Rabin below 3.3*10^24,
/// trial division above (unreachably slow but exact).
bool is_prime(const Integer& n);

} // namespace mkt
