#include "mkt/spectral.hpp"

#include "mkt/errors.hpp"
#include "mkt/intervals.hpp"
#include "mkt/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mkt {

double RealMatrix::trace() const {
    double t = 0;
    for (int i = 0; i < n; ++i) t += at(i, i);
    return t;
}

double RealMatrix::frobenius_squared() const {
    double s = 0;
    for (double v : a) s += v * v;
    return s;
}

RealMatrix nystrom_matrix(int N) {
    if (N < 1) throw std::invalid_argument("nystrom_matrix: N must be >= 1");
    RealMatrix A(N);
    for (int m = 1; m <= N; ++m)
        for (int n = m; n <= N; ++n) {
            double v = kernel_grid_entry(N, m, n).to_double() / N;
            A.at(m - 1, n - 1) = v;
            A.at(n - 1, m - 1) = v;
        }
    return A;
}

std::vector<double> symmetric_eigenvalues(RealMatrix A, double tol) {
    if (tol <= 0) throw std::invalid_argument("symmetric_eigenvalues: tol must be positive");
    const int n = A.n;
    if (n < 1 || A.a.size() != static_cast<size_t>(n) * n)
        throw std::invalid_argument("symmetric_eigenvalues: malformed matrix");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(A.at(i, j) - A.at(j, i)) > 1e-14)
                throw std::invalid_argument("symmetric_eigenvalues: matrix is not symmetric");

    const double fro0 = std::sqrt(A.frobenius_squared());
    auto off_norm = [&] {
        double s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += 2 * A.at(i, j) * A.at(i, j);
        return std::sqrt(s);
    };

    const int max_sweeps = 64;
    int sweep = 0;
    while (off_norm() > tol * fro0) {
        if (++sweep > max_sweeps)
            throw NoConvergence("symmetric_eigenvalues: sweep cap exceeded");
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = A.at(p, q);
                if (apq == 0.0) continue;
                double theta = (A.at(q, q) - A.at(p, p)) / (2 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 1.0 / (2 * theta);
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1));
                    if (theta < 0) t = -t;
                }
                double c = 1.0 / std::sqrt(t * t + 1);
                double s = t * c;
                double tau = s / (1 + c);

                double app = A.at(p, p), aqq = A.at(q, q);
                A.at(p, p) = app - t * apq;
                A.at(q, q) = aqq + t * apq;
                A.at(p, q) = 0.0;
                A.at(q, p) = 0.0;
                for (int i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    double aip = A.at(i, p), aiq = A.at(i, q);
                    A.at(i, p) = aip - s * (aiq + tau * aip);
                    A.at(i, q) = aiq + s * (aip - tau * aiq);
                    A.at(p, i) = A.at(i, p);
                    A.at(q, i) = A.at(i, q);
                }
            }
        }
    }

    std::vector<double> eig(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) eig[static_cast<size_t>(i)] = A.at(i, i);
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
}

Spectrum spectrum(int N, double zero_threshold) {
    if (N < 1) throw std::invalid_argument("spectrum: N must be >= 1");
    Spectrum s;
    s.grid_size = N;
    s.eigenvalues = symmetric_eigenvalues(nystrom_matrix(N));
    for (double e : s.eigenvalues) {
        if (e > zero_threshold) ++s.positive_count;
        if (e < -zero_threshold) ++s.negative_count;
        if (std::abs(e) > zero_threshold) s.kernel_eigenvalue_estimates.push_back(1.0 / e);
    }
    return s;
}

TraceBoundReport trace_bound_check(int N) {
    if (N < 1) throw std::invalid_argument("trace_bound_check: N must be >= 1");
    TraceBoundReport r;
    r.riemann_sum = riemann_l2_sum(N);
    auto eig = symmetric_eigenvalues(nystrom_matrix(N));
    double ss = 0;
    for (double e : eig) ss += e * e;
    r.eig_square_sum = ss;
    r.below_quarter = r.riemann_sum < Rational(1, 4);
    return r;
}

bool remark_bound_check(int k, double lambda_plus_estimate) {
    if (k < 1) throw std::invalid_argument("remark_bound_check: k must be >= 1");
    if (!(lambda_plus_estimate > 0))
        throw std::invalid_argument("remark_bound_check: estimate must be positive");

    // Double log-space screen; the bound overflows doubles long before k gets
    // anywhere interesting, so compare logarithms with a generous margin.
    double kp1 = k + 1;
    double log_rhs = std::log(2772.0) + 6.0 * kp1 * std::log(918.0 * kp1 * std::log(kp1));
    double log_lhs = std::log(lambda_plus_estimate);
    double margin = 1e-9 * (std::abs(log_lhs) + std::abs(log_rhs) + 1);
    if (log_lhs < log_rhs - margin) return true;
    if (log_lhs > log_rhs + margin) return false;

    // Exact fallback: certified rational interval for the bound. Endpoints
    // are rounded outward before the large power to keep numerators small.
    Rational est = Rational::of_double(lambda_plus_estimate);
    for (int terms = 32; terms <= 4096; terms *= 2) {
        RatInterval lnk = ri_round(ln_bounds(Rational(long(k) + 1), terms), 768);
        RatInterval base = ri_scale(Rational(918L * (k + 1)), lnk);
        RatInterval rhs = ri_scale(Rational(2772), ri_pow(base, 6UL * (k + 1)));
        if (est <= rhs.lo) return true;
        if (est > rhs.hi) return false;
    }
    throw ResourceLimit("remark_bound_check: interval refinement cap exceeded");
}

} // namespace mkt
