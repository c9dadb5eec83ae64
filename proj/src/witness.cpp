#include "mkt/witness.hpp"

#include "mkt/errors.hpp"
#include "mkt/intervals.hpp"
#include "mkt/kernel.hpp"
#include "mkt/numtheory.hpp"

#include <cmath>
#include <stdexcept>

namespace mkt {

namespace {

Integer least_crt_m(const Integer& p, int u) {
    // 2m = 3 (mod p)  <=>  m = 3 * 2^-1 (mod p)
    Integer inv2;
    mpz_invert(inv2.get_mpz_t(), Integer(2).get_mpz_t(), p.get_mpz_t());
    Integer rp = 3 * inv2 % p;
    Integer r3(u == 1 ? 1 : 2);
    ResidueClass c = crt_combine({{rp, p}, {r3, Integer(3)}});
    if (sgn(c.residue) == 0)
        throw ConstructionBug("least_crt_m: residue 0 contradicts gcd(m, 3p) = 1");
    return c.residue;
}

} // namespace

bool Lemma31Verification::ok() const {
    return shape_ok && primes_admissible && m_congruences && m_least && m_window &&
           n_congruence && n_window && product_matches && derived_congruence &&
           v_certificate && w_certificate && gcd_certificates;
}

Lemma31Instance construct_lemma31(int u, int extra) {
    return construct_lemma31(u, extra, 5.0 * std::sqrt(extra + 1.0));
}

Lemma31Instance construct_lemma31(int u, int extra, double Q) {
    if (u != 1 && u != -1) throw std::invalid_argument("construct_lemma31: u must be +1 or -1");
    if (extra < 0) throw std::invalid_argument("construct_lemma31: extra must be non-negative");
    if (!(Q >= 5)) throw std::invalid_argument("construct_lemma31: Q must be >= 5");

    Lemma31Instance inst;
    inst.u = u;
    inst.q_lower = Q;
    inst.extra = extra;
    inst.primes = primes_pm1_mod8(Q, extra + 1);

    inst.p_product = 1;
    std::vector<ResidueClass> root_classes;
    root_classes.reserve(inst.primes.size());
    for (const Integer& p : inst.primes) {
        Integer mj = least_crt_m(p, u);
        inst.m.push_back(mj);
        inst.p_product *= p;

        Integer p2 = p * p;
        Integer inv3;
        mpz_invert(inv3.get_mpz_t(), Integer(3).get_mpz_t(), p2.get_mpz_t());
        Integer a = mj * inv3 % p2; // n^2 = a (mod p^2)
        Integer r = sqrt_mod_prime(a, p);
        Integer s = lift_sqrt_to_prime_square(r, a, p);
        if (s > p2 - s) s = p2 - s; // canonical smaller root mod p^2
        root_classes.push_back({s, p2});
    }

    ResidueClass combined = crt_combine(root_classes);
    inst.n = combined.residue + inst.p_product * inst.p_product;

    Lemma31Verification v = verify_lemma31(inst);
    if (!v.ok()) throw ConstructionBug("construct_lemma31: constructed instance fails verification");
    return inst;
}

Lemma31Verification verify_lemma31(const Lemma31Instance& inst) {
    Lemma31Verification v;
    size_t count = inst.primes.size();
    v.shape_ok = inst.extra >= 0 && count == static_cast<size_t>(inst.extra) + 1 &&
                 inst.m.size() == count && (inst.u == 1 || inst.u == -1);
    if (!v.shape_ok) return v;

    Rational q_exact = Rational::of_double(inst.q_lower);
    v.primes_admissible = true;
    for (size_t j = 0; j < count; ++j) {
        const Integer& p = inst.primes[j];
        long rem = mpz_fdiv_ui(p.get_mpz_t(), 8);
        bool good = is_prime(p) && (rem == 1 || rem == 7) && Rational(p) > q_exact;
        if (j > 0 && p <= inst.primes[j - 1]) good = false;
        if (!good) v.primes_admissible = false;
    }

    v.m_congruences = v.m_least = v.m_window = true;
    for (size_t j = 0; j < count; ++j) {
        const Integer& p = inst.primes[j];
        const Integer& mj = inst.m[j];
        if ((2 * mj - 3) % p != 0 || mj % 3 != (inst.u == 1 ? 1 : 2)) v.m_congruences = false;
        if (!(sgn(mj) > 0 && mj < 3 * p)) v.m_window = false;
        if (!v.primes_admissible || mj != least_crt_m(p, inst.u)) v.m_least = false;
    }

    const Integer& n = inst.n;
    Integer n2_3 = 3 * n * n;
    v.n_congruence = true;
    v.v_certificate = true;
    for (size_t j = 0; j < count; ++j) {
        Integer p2 = inst.primes[j] * inst.primes[j];
        Integer diff = n2_3 - inst.m[j];
        if (diff % p2 != 0) {
            v.n_congruence = false;
            v.v_certificate = false;
            continue;
        }
        // 3n^2 = m_j + (3 v_j - u) p_j^2 for an integer v_j
        Integer quot = diff / p2;
        Integer want((inst.u == 1) ? 2 : 1); // -u mod 3
        Integer got = quot % 3;
        if (sgn(got) < 0) got += 3;
        if (got != want) v.v_certificate = false;
    }

    Integer product(1);
    for (const Integer& p : inst.primes) product *= p;
    v.product_matches = product == inst.p_product;
    Integer p_sq = inst.p_product * inst.p_product;
    v.n_window = p_sq < n && n < 2 * p_sq;

    Integer two_n2_m1 = 2 * n * n - 1;
    v.derived_congruence = true;
    v.w_certificate = true;
    for (size_t j = 0; j < count; ++j) {
        if (two_n2_m1 % inst.primes[j] != 0) v.derived_congruence = false;
        for (size_t k = j + 1; k < count; ++k) {
            Integer pjpk = inst.primes[j] * inst.primes[k];
            if (two_n2_m1 % pjpk != 0) {
                v.derived_congruence = false;
                v.w_certificate = false;
                continue;
            }
            // 2n^2 = 1 + (1 + 2 w_jk) p_j p_k for an integer w_jk
            if (mpz_even_p(Integer(two_n2_m1 / pjpk).get_mpz_t())) v.w_certificate = false;
        }
    }

    v.gcd_certificates = true;
    for (size_t j = 0; j < count; ++j) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), inst.m[j].get_mpz_t(), Integer(3 * inst.primes[j]).get_mpz_t());
        if (g != 1) v.gcd_certificates = false;
    }
    Integer gn;
    mpz_gcd(gn.get_mpz_t(), n.get_mpz_t(), inst.p_product.get_mpz_t());
    if (gn != 1) v.gcd_certificates = false;

    return v;
}

RationalMatrix closed_form_kernel_values(const Lemma31Instance& inst) {
    int size = static_cast<int>(inst.primes.size());
    RationalMatrix closed(size);
    RationalMatrix direct(size);
    Rational u_sixth(inst.u, 6);
    for (int j = 0; j < size; ++j) {
        Rational xj(inst.primes[static_cast<size_t>(j)], inst.n);
        for (int k = j; k < size; ++k) {
            Rational xk(inst.primes[static_cast<size_t>(k)], inst.n);
            direct.at(j, k) = kernel_exact(xj, xk);
            direct.at(k, j) = direct.at(j, k);
            if (j == k) {
                closed.at(j, j) =
                    -(u_sixth + Rational(inst.m[static_cast<size_t>(j)],
                                         3 * inst.primes[static_cast<size_t>(j)] * inst.primes[static_cast<size_t>(j)]));
            } else {
                closed.at(j, k) = Rational(Integer(-1), 2 * inst.primes[static_cast<size_t>(j)] *
                                                            inst.primes[static_cast<size_t>(k)]);
                closed.at(k, j) = closed.at(j, k);
            }
        }
    }
    for (int j = 0; j < size; ++j)
        for (int k = 0; k < size; ++k)
            if (closed.at(j, k) != direct.at(j, k))
                throw ConstructionBug("closed_form_kernel_values: closed form disagrees with direct evaluation");
    return closed;
}

BumpParameters bump_from_t(double t) {
    if (!(t > 0) || !std::isfinite(t)) throw std::invalid_argument("bump_from_t: t must be positive");
    BumpParameters b;
    b.t = t;
    if (t < 0.1) {
        // Delta = t/2 - ln(sinh(t/2)/(t/2)); series for the log term, since the
        // direct formula cancels to nothing in doubles once t is tiny.
        double x = t / 2;
        double x2 = x * x;
        double log_term = x2 / 6 - x2 * x2 / 180 + x2 * x2 * x2 / 2835;
        b.Delta = x - log_term;
    } else {
        b.Delta = std::log(t / -std::expm1(-t));
    }
    b.delta = t - b.Delta;
    return b;
}

BumpParameters choose_bump_scale(const Lemma31Instance& inst) {
    double nd = inst.n.get_d();
    double t = 0.5 * std::log1p(28.0 / (3.0 * nd * nd));
    BumpParameters b = bump_from_t(t);
    // e^{2t} - 1 = 28/(3n^2) implies the support-separation condition t <= 2/max p.
    double max_p = inst.primes.back().get_d();
    if (!(t <= 2.0 / max_p))
        throw ConstructionBug("choose_bump_scale: t exceeds 2/max(p)");
    return b;
}

RealMatrix overlap_matrix(const Lemma31Instance& inst, const BumpParameters& bump) {
    double nd = inst.n.get_d();
    double cap = 28.0 / (3.0 * nd * nd);
    if (!(bump.t > 0) || std::expm1(2 * bump.t) > cap * (1 + 1e-9))
        throw PreconditionViolation("overlap_matrix: bump scale violates e^{2t} - 1 <= 28/(3n^2)");

    int size = static_cast<int>(inst.primes.size());
    RationalMatrix g = closed_form_kernel_values(inst);
    RealMatrix psi(size);
    for (int j = 0; j < size; ++j) {
        double xj = inst.primes[static_cast<size_t>(j)].get_d() / nd;
        for (int k = j; k < size; ++k) {
            double xk = inst.primes[static_cast<size_t>(k)].get_d() / nd;
            double v = bump.t * std::sqrt(xj * xk) * g.at(j, k).to_double();
            psi.at(j, k) = v;
            psi.at(k, j) = v;
        }
    }
    return psi;
}

double overlap_box_max_rel_error(const Lemma31Instance& inst, const RealMatrix& psi) {
    int size = static_cast<int>(inst.primes.size());
    if (psi.n != size) throw std::invalid_argument("overlap_box_max_rel_error: size mismatch");

    const int ln_terms = 24;
    const int exp_terms = 24;
    // Endpoints are rounded outward to this precision after every composite
    // step; otherwise denominators multiply through the chain of operations
    // and the arithmetic grinds to a halt on the larger instances.
    const unsigned prec = 512;

    // Certified bracket of t = (1/2) ln(1 + 28/(3 n^2)).
    Rational tau = Rational(28) / Rational(3 * inst.n * inst.n);
    RatInterval t_int =
        ri_round(ri_scale(Rational(1, 2), ln_bounds(Rational(1) + tau, ln_terms)), prec);

    // e^Delta = t E/(E-1) and e^{-delta} = t/(E-1), with E = e^t.
    RatInterval e_t = ri_round(exp_bounds(t_int, exp_terms), prec);
    RatInterval e_t_minus_1 = ri_sub(e_t, {Rational(1), Rational(1)});
    RatInterval e_big = ri_round(ri_div(ri_mul(t_int, e_t), e_t_minus_1), prec);
    RatInterval e_small = ri_round(ri_div(t_int, e_t_minus_1), prec);
    RatInterval width_factor = ri_sub(e_big, e_small);          // e^Delta - e^{-delta}
    RatInterval log_factor =
        ri_round(ln_bounds(ri_round(ri_div(e_big, e_small), prec), ln_terms), prec); // Delta + delta

    RationalMatrix g = closed_form_kernel_values(inst);
    double worst = 0;
    for (int j = 0; j < size; ++j) {
        Rational xj(inst.primes[static_cast<size_t>(j)], inst.n);
        for (int k = j; k < size; ++k) {
            Rational xk(inst.primes[static_cast<size_t>(k)], inst.n);
            Rational xx = xj * xk;
            Rational integrand = g.at(j, k) + Rational(1) / xx; // K + 1/(x_j x_k), constant on the box
            RatInterval numer = ri_sub(ri_scale(xx * integrand, ri_mul(width_factor, width_factor)),
                                       ri_mul(log_factor, log_factor));
            RatInterval denom = ri_mul(t_int, sqrt_bounds(xx, 320));
            RatInterval box = ri_div(numer, denom);

            // The same bracket must also contain the closed form t sqrt(xx) K.
            RatInterval closed = ri_scale(g.at(j, k), ri_mul(t_int, sqrt_bounds(xx, 320)));
            if (closed.hi < box.lo || box.hi < closed.lo)
                throw ConstructionBug("overlap_box_max_rel_error: box integral and closed form diverge");

            Rational mid = box.mid();
            Rational rel = (Rational::of_double(psi.at(j, k)) - mid).abs() / mid.abs();
            worst = std::max(worst, rel.to_double());
        }
    }
    return worst;
}

WitnessReport definiteness_check(const Lemma31Instance& inst) {
    Lemma31Verification v = verify_lemma31(inst);
    if (!v.ok()) throw InvalidInstance("definiteness_check: instance fails verification");
    double min_p = inst.primes.front().get_d();
    if (!(min_p > 5.0 * std::max(1.0, std::sqrt(static_cast<double>(inst.extra)))))
        throw InvalidInstance("definiteness_check: min prime must exceed 5 max(1, sqrt(extra))");

    WitnessReport report;
    report.instance = inst;
    report.kernel_matrix = closed_form_kernel_values(inst);
    Rational seventh(1, 7);
    for (const Integer& p : inst.primes) {
        Rational x(p, inst.n);
        if (!(x.sign() > 0 && x < seventh))
            throw ConstructionBug("definiteness_check: witness point outside (0, 1/7)");
        report.points.push_back(x);
    }
    report.bump = choose_bump_scale(inst);
    report.overlap = overlap_matrix(inst, report.bump);

    int size = static_cast<int>(inst.primes.size());
    RealMatrix ug(size);
    for (int j = 0; j < size; ++j)
        for (int k = 0; k < size; ++k)
            ug.at(j, k) = inst.u * report.kernel_matrix.at(j, k).to_double();
    auto eig = symmetric_eigenvalues(std::move(ug));
    report.max_eig_uG = eig.front();
    report.passes = report.max_eig_uG <= -1.0 / 336.0 + 1e-12;
    return report;
}

} // namespace mkt
