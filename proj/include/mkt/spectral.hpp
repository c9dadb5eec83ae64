#pragma once

#include "mkt/rational.hpp"

#include <vector>

namespace mkt {

/// Dense real matrix, row-major.
struct RealMatrix {
    int n = 0;
    std::vector<double> a;

    RealMatrix() = default;
    explicit RealMatrix(int size) : n(size), a(static_cast<size_t>(size) * size, 0.0) {}

    double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    double trace() const;
    double frobenius_squared() const;
};

/// Discretized kernel operator: A_N(m, n) = K(m/N, n/N) / N, so matrix
/// eigenvalues approximate the reciprocals 1/lambda of kernel eigenvalues.
RealMatrix nystrom_matrix(int N);

/// All eigenvalues of a symmetric matrix, sorted descending, by cyclic Jacobi
/// sweeps. Converged when the off-diagonal Frobenius norm falls below
/// tol times the initial Frobenius norm. Deterministic for a fixed sweep
/// order; the input must be symmetric within 1e-14 absolute.
std::vector<double> symmetric_eigenvalues(RealMatrix A, double tol = 1e-12);

struct Spectrum {
    int grid_size = 0;
    std::vector<double> eigenvalues; // descending
    int positive_count = 0;          // entries > zero_threshold
    int negative_count = 0;          // entries < -zero_threshold
    // Reciprocals 1/e of the eigenvalues with |e| > zero_threshold, in the
    // same order as `eigenvalues`. Indicative only: no convergence theory
    // backs these estimates for this discontinuous kernel.
    std::vector<double> kernel_eigenvalue_estimates;
};

Spectrum spectrum(int N, double zero_threshold = 1e-9);

struct TraceBoundReport {
    Rational riemann_sum;       // exact grid approximation of the L2 integral
    double eig_square_sum = 0;  // sum of squared matrix eigenvalues
    bool below_quarter = false; // riemann_sum < 1/4, exact comparison
};

TraceBoundReport trace_bound_check(int N);

/// True iff estimate <= 2772 (918 (k+1) ln(k+1))^(6(k+1)). Decided by a
/// double log-space screen, falling back to exact rational interval
/// arithmetic when the margin is too small for doubles.
bool remark_bound_check(int k, double lambda_plus_estimate);

} // namespace mkt
