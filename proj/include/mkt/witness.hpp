#pragma once

#include "mkt/rational.hpp"
#include "mkt/spectral.hpp"

#include <vector>

namespace mkt {

/// A constructed tuple (u, Q, primes p_1..p_{N+1}, m_1..m_{N+1}, n, P) with
///   2 m_j = 3 (mod p_j), m_j = u (mod 3), 0 < m_j < 3 p_j,
///   3 n^2 = m_j (mod p_j^2) for every j, and P^2 < n < 2 P^2
/// where P is the product of the primes. `extra` is the construction
/// parameter: the instance carries extra+1 primes. (It is deliberately not
/// called N to avoid collision with grid sizes elsewhere.)
struct Lemma31Instance {
    int u = 1; // +1 or -1
    double q_lower = 5.0;
    int extra = 0;
    std::vector<Integer> primes; // ascending, distinct, > q_lower, = +-1 mod 8
    std::vector<Integer> m;
    Integer n;
    Integer p_product;
};

/// Exact modular verdicts, one per condition, plus the derived congruence and
/// the integrality/gcd certificates.
struct Lemma31Verification {
    bool shape_ok = false;          // sizes consistent, extra+1 primes
    bool primes_admissible = false; // prime, ascending, > Q, = +-1 mod 8
    bool m_congruences = false;     // 2m_j = 3 (mod p_j) and m_j = u (mod 3)
    bool m_least = false;           // m_j is the least positive solution
    bool m_window = false;          // 0 < m_j < 3 p_j
    bool n_congruence = false;      // 3 n^2 = m_j (mod p_j^2)
    bool n_window = false;          // P^2 < n < 2 P^2
    bool product_matches = false;   // P equals the product of the primes
    bool derived_congruence = false; // 2 n^2 = 1 (mod p_j) and (mod p_j p_k)
    bool v_certificate = false;     // (3n^2 - m_j)/p_j^2 = -u (mod 3)
    bool w_certificate = false;     // (2n^2 - 1)/(p_j p_k) odd
    bool gcd_certificates = false;  // gcd(m_j, 3 p_j) = 1 and gcd(n, P) = 1

    bool ok() const;
};

/// Bump widths tied by e^Delta - e^{-delta} = t = Delta + delta.
struct BumpParameters {
    double t = 0;
    double Delta = 0; // ln(t / (1 - e^{-t}))
    double delta = 0; // t - Delta
};

/// Small dense symmetric matrix of exact rationals.
struct RationalMatrix {
    int n = 0;
    std::vector<Rational> e;

    RationalMatrix() = default;
    explicit RationalMatrix(int size) : n(size), e(static_cast<size_t>(size) * size) {}
    Rational& at(int i, int j) { return e[static_cast<size_t>(i) * n + j]; }
    const Rational& at(int i, int j) const { return e[static_cast<size_t>(i) * n + j]; }
};

struct WitnessReport {
    Lemma31Instance instance;
    std::vector<Rational> points;  // x_j = p_j / n, all in (0, 1/7)
    RationalMatrix kernel_matrix;  // G(j,k) = K(x_j, x_k), exact
    BumpParameters bump;
    RealMatrix overlap;            // Psi(j,k) = t sqrt(x_j x_k) K(x_j, x_k)
    double max_eig_uG = 0;
    bool passes = false;           // max_eig_uG <= -1/336 + 1e-12
};

/// Deterministic construction: smallest admissible primes, least CRT m_j,
/// n from the canonical (smaller) square root of m_j * 3^-1 mod p_j^2 per
/// prime, CRT-combined and shifted into (P^2, 2 P^2).
Lemma31Instance construct_lemma31(int u, int extra);
Lemma31Instance construct_lemma31(int u, int extra, double Q);

Lemma31Verification verify_lemma31(const Lemma31Instance& inst);

/// G computed twice - via kernel_exact at x_j = p_j/n and via the closed
/// forms, diagonal -(u/6 + m_j/(3 p_j^2)) and off-diagonal -1/(2 p_j p_k) -
/// and asserted exactly equal.
RationalMatrix closed_form_kernel_values(const Lemma31Instance& inst);

/// Delta/delta split for a given t > 0 (series evaluation for small t, where
/// the direct formula loses everything to rounding).
BumpParameters bump_from_t(double t);

/// t at the boundary e^{2t} - 1 = 28/(3 n^2), then the Delta/delta split.
BumpParameters choose_bump_scale(const Lemma31Instance& inst);

/// Closed-form overlap matrix Psi(j,k) = t sqrt(x_j x_k) K(x_j, x_k).
/// The bump must satisfy e^{2t} - 1 <= 28/(3 n^2).
RealMatrix overlap_matrix(const Lemma31Instance& inst, const BumpParameters& bump);

/// Independent check of `psi` against the box-integral route
///   [x_j x_k w^2 (K + 1/(x_j x_k)) - l^2] / (t sqrt(x_j x_k)),
/// w and l evaluated from the exponentials, in certified rational interval
/// arithmetic (double noise is amplified by n^2 here and cannot reach 1e-10).
/// Returns the largest relative deviation of any psi entry from the bracketed
/// box value.
double overlap_box_max_rel_error(const Lemma31Instance& inst, const RealMatrix& psi);

/// Full pipeline: verification, dual-route G, bump, overlap, and the largest
/// eigenvalue of u*G, which must fall below -1/336 for the sign argument.
/// Requires min p_j > 5 max(1, sqrt(extra)).
WitnessReport definiteness_check(const Lemma31Instance& inst);

} // namespace mkt
