#pragma once

#include "mkt/kernel.hpp"
#include "mkt/numtheory.hpp"
#include "mkt/rational.hpp"

#include <vector>

namespace mkt {

/// Both sides of a Mertens identity evaluated exactly, with their difference.
struct IdentityReport {
    long long parameter = 0;
    Rational lhs;
    Rational rhs;
    Rational residual; // lhs - rhs, exact
};

enum class IdentityKind { eq12, mertens1897 };

/// M(N^2)/N^2 + (1/N^2) sum K(m/N,n/N) mu(m) mu(n)
///   == M(N)(M(N)+4)/(2N^2) - (sum_{m<=N} mu(m)/m)^2.
/// Requires table.limit >= N^2. The residual is zero for every N.
IdentityReport check_identity_12(int N, const MobiusTable& table);

/// M(n) == 2 M(sqrt(n)) - sum_{r,s <= sqrt(n)} mu(r) mu(s) floor(n/(rs)),
/// with the integer square root (never a floating sqrt).
IdentityReport check_mertens_1897(long long n, const MobiusTable& table);

struct ScanResult {
    std::vector<IdentityReport> reports; // ascending parameter order
    bool all_zero = true;
};

/// Evaluates the chosen identity for every parameter in [lo, hi] (empty when
/// hi < lo). Parameters are checked in parallel; reports merge in ascending
/// order and are bit-identical regardless of schedule.
ScanResult scan_identities(IdentityKind kind, long long lo, long long hi, const MobiusTable& table);

} // namespace mkt
