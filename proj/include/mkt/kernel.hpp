#pragma once

#include "mkt/numtheory.hpp"
#include "mkt/rational.hpp"

#include <vector>

namespace mkt {

/// K(x, y) = 1/2 - {1/(xy)} on (0,1]^2, extended by 0 when xy = 0.
/// Exact: for x = a/b, y = c/d in lowest terms this is 1/2 - frac(bd/(ac)).
Rational kernel_exact(const Rational& x, const Rational& y);

/// Double-precision evaluation of the same kernel.
double kernel_float(double x, double y);

/// K(m/N, n/N) without building the rational grid points; identical to
/// kernel_exact(m/N, n/N) (property-tested against it).
Rational kernel_grid_entry(int N, int m, int n);

/// Symmetric N x N matrix of exact kernel samples K(m/N, n/N), 1 <= m,n <= N.
class GridMatrix {
  public:
    explicit GridMatrix(int n) : n_(n), upper_(static_cast<size_t>(n) * (n + 1) / 2) {}

    int size() const { return n_; }
    const Rational& at(int m, int n) const { return upper_[index(m, n)]; }
    Rational& at(int m, int n) { return upper_[index(m, n)]; }

  private:
    size_t index(int m, int n) const {
        if (m > n) std::swap(m, n);
        // packed upper triangle, 1-based (m, n) with m <= n; row m starts after
        // the (m-1) longer rows above it
        size_t row = static_cast<size_t>(m - 1);
        return row * (n_ + 1) - row * (row + 1) / 2 + static_cast<size_t>(n - m);
    }

    int n_;
    std::vector<Rational> upper_;
};

GridMatrix grid_matrix(int N);

/// (1/N^2) * sum over the full N x N grid of K(m/N, n/N)^2, exact.
Rational riemann_l2_sum(int N);

/// (1/N^2) * sum over the grid of K(m/N, n/N) mu(m) mu(n), exact.
Rational mobius_quadratic_form(int N, const MobiusTable& table);

} // namespace mkt
