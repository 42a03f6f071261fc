#pragma once

#include "ulbkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace ulbkit {

namespace detail {

// Number of eigenvalues strictly below x of the symmetric tridiagonal matrix
// with diagonal `diag` and squared off-diagonal `off_sq` (off_sq[i] couples
// rows i-1 and i; off_sq[0] is ignored). Sturm count via the LDL^T pivots.
inline int sturm_count(std::span<const double> diag, std::span<const double> off_sq, double x) {
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        double prev = i == 0 ? 0.0 : off_sq[i] / q;
        q = diag[i] - x - prev;
        if (q == 0.0) q = -std::numeric_limits<double>::epsilon() * (std::abs(x) + 1.0);
        if (q < 0.0) ++count;
    }
    return count;
}

}  // namespace detail

/**
 * All eigenvalues (ascending) of a symmetric tridiagonal matrix, found one at
 * a time by bisection on the Sturm count. Used for zeros of orthogonal
 * polynomials, which are the eigenvalues of their Jacobi matrix.
 */
inline std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag, std::span<const double> off_sq) {
    const std::size_t n = diag.size();
    if (off_sq.size() < n) throw ParameterError("tridiagonal_eigenvalues: off-diagonal too short");
    if (n == 0) return {};
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::sqrt(std::max(0.0, off_sq[i]));
        if (i + 1 < n) r += std::sqrt(std::max(0.0, off_sq[i + 1]));
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    double pad = 1e-12 * (1.0 + std::max(std::abs(lo), std::abs(hi)));
    lo -= pad;
    hi += pad;

    std::vector<double> eig(n);
    for (std::size_t k = 0; k < n; ++k) {
        double a = k == 0 ? lo : eig[k - 1];
        double b = hi;
        // Find x with exactly k eigenvalues below and at least k+1 at or below.
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (detail::sturm_count(diag, off_sq, mid) > static_cast<int>(k))
                b = mid;
            else
                a = mid;
        }
        eig[k] = 0.5 * (a + b);
    }
    return eig;
}

}  // namespace ulbkit
