#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mkt/errors.hpp"
#include "mkt/intervals.hpp"
#include "mkt/kernel.hpp"
#include "mkt/numtheory.hpp"
#include "mkt/rational.hpp"

#include <cmath>
#include <random>

using namespace mkt;

TEST_CASE("rational basics") {
    Rational a(3, 6);
    CHECK(a.num() == 1);
    CHECK(a.den() == 2);
    Rational b(-3, 6);
    CHECK(b.num() == -1);
    CHECK(b.den() == 2);
    Rational c(2, -4); // denominator sign normalizes away
    CHECK(c.num() == -1);
    CHECK(c.den() == 2);

    CHECK(Rational(7, 2).floor_int() == 3);
    CHECK(Rational(-7, 2).floor_int() == -4);
    CHECK(Rational(-7, 2).frac() == Rational(1, 2));
    CHECK(Rational(9, 4).frac() == Rational(1, 4));
    CHECK(Rational(4, 2).frac() == Rational(0));
    CHECK(Rational(1, 3).to_string() == "1/3");
    CHECK(Rational(4, 2).to_string() == "2");
    CHECK(Rational::of_double(0.375) == Rational(3, 8));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::invalid_argument);
}

TEST_CASE("isqrt is the floor square root") {
    CHECK(isqrt(Integer(0)) == 0);
    CHECK(isqrt(Integer(1)) == 1);
    CHECK(isqrt(Integer(2)) == 1);
    CHECK(isqrt(Integer(4)) == 2);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        Integer n = Integer(static_cast<unsigned long>(rng()));
        n = n * n / 7 + Integer(static_cast<unsigned long>(rng() % 1000)); // up to ~2^125
        Integer s = isqrt(n);
        CAPTURE(n.get_str());
        CHECK(s * s <= n);
        CHECK((s + 1) * (s + 1) > n);
    }
    for (long k = 1; k <= 200; ++k) {
        Integer sq = Integer(k) * k;
        CHECK(isqrt(sq) == k);
        CHECK(isqrt(sq - 1) == k - 1);
        CHECK(isqrt(sq + 1) == k);
    }
}

TEST_CASE("kernel_exact examples") {
    CHECK(kernel_exact(Rational(1), Rational(1)) == Rational(1, 2));
    CHECK(kernel_exact(Rational(1, 2), Rational(1, 2)) == Rational(1, 2));
    CHECK(kernel_exact(Rational(3, 4), Rational(0)) == Rational(0));
    CHECK(kernel_exact(Rational(0), Rational(0)) == Rational(0));
    CHECK(kernel_exact(Rational(7, 10), Rational(7, 10)) == Rational(45, 98));
    CHECK_THROWS_AS(kernel_exact(Rational(3, 2), Rational(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(kernel_exact(Rational(1, 2), Rational(-1, 2)), std::invalid_argument);
}

TEST_CASE("kernel_exact symmetry and range") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> num(0, 60), den(1, 60);
    for (int i = 0; i < 2000; ++i) {
        long bx = den(rng), by = den(rng);
        Rational x(num(rng) % (bx + 1), bx);
        Rational y(num(rng) % (by + 1), by);
        Rational k = kernel_exact(x, y);
        CHECK(k == kernel_exact(y, x));
        if (x.is_zero() || y.is_zero()) {
            CHECK(k == Rational(0));
            continue;
        }
        CHECK(k > Rational(-1, 2));
        CHECK(k <= Rational(1, 2));
        bool reciprocal_is_integer = (Rational(1) / (x * y)).frac().is_zero();
        CHECK((k == Rational(1, 2)) == reciprocal_is_integer);
    }
}

TEST_CASE("kernel_float examples") {
    CHECK(kernel_float(1.0, 1.0) == 0.5);
    CHECK(kernel_float(0.3, 0.0) == 0.0);
    double near_half = 0.5 + 1e-9;
    CHECK(std::abs(kernel_float(near_half, near_half) - (-0.5)) < 2e-8);
    CHECK(kernel_float(0.7, 0.7) == doctest::Approx(45.0 / 98.0).epsilon(1e-12));
    CHECK_THROWS_AS(kernel_float(1.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(kernel_float(0.5, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(kernel_float(std::nan(""), 0.5), std::invalid_argument);
}

TEST_CASE("kernel_float agrees with kernel_exact away from jumps") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<long> num(1, 999), den(1, 1000);
    int tested = 0;
    for (int i = 0; i < 5000; ++i) {
        long bx = den(rng), by = den(rng);
        long ax = num(rng) % bx + 1, ay = num(rng) % by + 1;
        Rational x(ax, bx), y(ay, by);
        Rational q = Rational(1) / (x * y);
        Rational f = q.frac();
        // skip points within 1e-6 of a discontinuity of the fractional part
        if (f < Rational(1, 1000000) || f > Rational(999999, 1000000)) continue;
        ++tested;
        double exact = kernel_exact(x, y).to_double();
        double approx = kernel_float(x.to_double(), y.to_double());
        double scale = std::max(q.to_double(), 1.0);
        CHECK(std::abs(exact - approx) <= 4 * 2.220446049250313e-16 * scale);
    }
    CHECK(tested > 3000);
}

TEST_CASE("grid_matrix examples") {
    GridMatrix g1 = grid_matrix(1);
    CHECK(g1.at(1, 1) == Rational(1, 2));

    GridMatrix g2 = grid_matrix(2);
    for (int m = 1; m <= 2; ++m)
        for (int n = 1; n <= 2; ++n) CHECK(g2.at(m, n) == Rational(1, 2));

    GridMatrix g3 = grid_matrix(3);
    CHECK(g3.at(2, 2) == Rational(1, 4));
    CHECK(g3.at(1, 2) == Rational(0));
    CHECK(g3.at(1, 1) == Rational(1, 2));
    CHECK(g3.at(1, 3) == Rational(1, 2));
    CHECK(g3.at(2, 3) == Rational(0));
    CHECK(g3.at(3, 3) == Rational(1, 2));

    CHECK_THROWS_AS(grid_matrix(0), std::invalid_argument);
}

TEST_CASE("grid entries equal kernel_exact at grid points") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        int N = static_cast<int>(rng() % 64 + 1);
        GridMatrix g = grid_matrix(N);
        for (int i = 0; i < 20; ++i) {
            int m = static_cast<int>(rng() % N + 1);
            int n = static_cast<int>(rng() % N + 1);
            CAPTURE(N);
            CAPTURE(m);
            CAPTURE(n);
            CHECK(g.at(m, n) == kernel_exact(Rational(m, N), Rational(n, N)));
            CHECK(g.at(m, n) == g.at(n, m));
            CHECK(g.at(m, n) > Rational(-1, 2));
            CHECK(g.at(m, n) <= Rational(1, 2));
        }
    }
}

TEST_CASE("riemann_l2_sum examples and direct-sum oracle") {
    CHECK(riemann_l2_sum(1) == Rational(1, 4));
    CHECK(riemann_l2_sum(2) == Rational(1, 4));

    // independent oracle: direct sum over all nine exact samples
    Rational direct(0);
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n) {
            Rational e = kernel_exact(Rational(m, 3), Rational(n, 3));
            direct += e * e;
        }
    direct /= Rational(9);
    CHECK(riemann_l2_sum(3) == direct);
    CHECK(riemann_l2_sum(3) == Rational(17, 144));
    CHECK(riemann_l2_sum(4) == Rational(101, 648));
    CHECK_THROWS_AS(riemann_l2_sum(0), std::invalid_argument);
}

TEST_CASE("riemann_l2_sum equals the scaled Frobenius norm of the grid") {
    for (int N : {1, 2, 3, 5, 8, 12}) {
        GridMatrix g = grid_matrix(N);
        Rational fro(0);
        for (int m = 1; m <= N; ++m)
            for (int n = 1; n <= N; ++n) fro += g.at(m, n) * g.at(m, n);
        CHECK(riemann_l2_sum(N) == fro / Rational(Integer(N) * Integer(N)));
    }
}

TEST_CASE("mobius_quadratic_form examples") {
    MobiusTable t = sieve_mobius(128);
    CHECK(mobius_quadratic_form(1, t) == Rational(1, 2));
    CHECK(mobius_quadratic_form(2, t) == Rational(0));

    // direct double-sum oracle at small N
    for (int N : {3, 5, 10}) {
        Rational direct(0);
        for (int m = 1; m <= N; ++m)
            for (int n = 1; n <= N; ++n) {
                Rational e = kernel_exact(Rational(m, N), Rational(n, N));
                direct += e * Rational(t.mu(m) * t.mu(n));
            }
        direct /= Rational(Integer(N) * Integer(N));
        CHECK(mobius_quadratic_form(N, t) == direct);
    }

    MobiusTable tiny = sieve_mobius(4);
    CHECK_THROWS_AS(mobius_quadratic_form(5, tiny), TableTooSmall);
}

TEST_CASE("interval helpers bracket known constants") {
    // coarse intervals are wide enough to contain the correctly-rounded doubles
    CHECK(ln_bounds(Rational(2), 8).contains(Rational::of_double(0.6931471805599453)));
    CHECK(ln_bounds(Rational(10), 8).contains(Rational::of_double(2.302585092994046)));
    CHECK(ln_bounds(Rational(1, 2), 8).contains(Rational::of_double(-0.6931471805599453)));
    CHECK(exp_bounds(Rational(1), 12).contains(Rational::of_double(2.718281828459045)));
    CHECK(exp_bounds(Rational(-1), 12).contains(Rational::of_double(0.36787944117144233)));
    CHECK(sqrt_bounds(Rational(2), 40).contains(Rational::of_double(1.4142135623730951)));

    // tight intervals: the enclosure narrows well past double precision and
    // stays nested inside the coarse one
    RatInterval ln2_fine = ln_bounds(Rational(2), 40);
    RatInterval ln2_coarse = ln_bounds(Rational(2), 8);
    CHECK(ln2_fine.lo < ln2_fine.hi);
    CHECK(ln2_coarse.lo <= ln2_fine.lo);
    CHECK(ln2_fine.hi <= ln2_coarse.hi);
    CHECK(ln2_fine.width() < Rational(Integer(1), Integer(10000000)) * ln2_coarse.width());
    CHECK(sqrt_bounds(Rational(2), 128).width() < Rational(Integer(1), Integer(1) << 100));
    CHECK(ln_bounds(Rational(2), 20).width() < ln_bounds(Rational(2), 10).width());

    CHECK_THROWS_AS(ln_bounds(Rational(0), 10), std::invalid_argument);
    CHECK_THROWS_AS(ln_bounds(Rational(-1), 10), std::invalid_argument);
    CHECK_THROWS_AS(exp_bounds(Rational(2), 10), std::invalid_argument);
    CHECK_THROWS_AS(sqrt_bounds(Rational(-1), 10), std::invalid_argument);
}
