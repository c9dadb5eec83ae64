#include "mkt/kernel.hpp"

#include "mkt/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace mkt {

Rational kernel_exact(const Rational& x, const Rational& y) {
    if (x.sign() < 0 || y.sign() < 0 || x > Rational(1) || y > Rational(1))
        throw std::invalid_argument("kernel_exact: arguments must lie in [0, 1]");
    if (x.is_zero() || y.is_zero()) return Rational(0);
    Rational q = Rational(1) / (x * y);
    return Rational(1, 2) - q.frac();
}

double kernel_float(double x, double y) {
    if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
        throw std::invalid_argument("kernel_float: arguments must lie in [0, 1]");
    double p = x * y;
    if (p == 0.0) return 0.0;
    double q = 1.0 / p;
    // Beyond 2^53 every double is an integer, so the fractional part is 0.
    if (!std::isfinite(q) || q >= 9007199254740992.0) return 0.5;
    return 0.5 - (q - std::floor(q));
}

Rational kernel_grid_entry(int N, int m, int n) {
    if (N < 1 || m < 1 || n < 1 || m > N || n > N)
        throw std::invalid_argument("kernel_grid_entry: need 1 <= m,n <= N");
    // K(m/N, n/N) = 1/2 - (N^2 mod mn)/(mn) = (mn - 2 (N^2 mod mn)) / (2mn)
    unsigned long long q = static_cast<unsigned long long>(m) * static_cast<unsigned long long>(n);
    unsigned long long n2 = static_cast<unsigned long long>(N) * static_cast<unsigned long long>(N);
    unsigned long long r = n2 % q;
    long long num = static_cast<long long>(q - r) - static_cast<long long>(r);
    return Rational(Integer(static_cast<long>(num)), Integer(2) * Integer(static_cast<unsigned long>(q)));
}

GridMatrix grid_matrix(int N) {
    if (N < 1) throw std::invalid_argument("grid_matrix: N must be >= 1");
    GridMatrix g(N);
    for (int m = 1; m <= N; ++m)
        for (int n = m; n <= N; ++n)
            g.at(m, n) = kernel_grid_entry(N, m, n);
    return g;
}

Rational riemann_l2_sum(int N) {
    if (N < 1) throw std::invalid_argument("riemann_l2_sum: N must be >= 1");
    Rational sum(0);
    for (int m = 1; m <= N; ++m) {
        Rational row(0);
        for (int n = m; n <= N; ++n) {
            Rational e = kernel_grid_entry(N, m, n);
            Rational sq = e * e;
            row += (n == m) ? sq : Rational(2) * sq;
        }
        sum += row;
    }
    return sum / Rational(Integer(N) * Integer(N));
}

Rational mobius_quadratic_form(int N, const MobiusTable& table) {
    if (N < 1) throw std::invalid_argument("mobius_quadratic_form: N must be >= 1");
    if (table.limit < N)
        throw TableTooSmall("mobius_quadratic_form: table sieved only to " + std::to_string(table.limit));
    Rational sum(0);
    for (int m = 1; m <= N; ++m) {
        int mum = table.mu(m);
        if (mum == 0) continue;
        Rational row = kernel_grid_entry(N, m, m); // mu(m)^2 = 1
        for (int n = m + 1; n <= N; ++n) {
            int mun = table.mu(n);
            if (mun == 0) continue;
            Rational e = kernel_grid_entry(N, m, n);
            row += Rational(2L * mum * mun) * e;
        }
        sum += row;
    }
    return sum / Rational(Integer(N) * Integer(N));
}

} // namespace mkt
