#pragma once

/**
 * @file polynomial.hpp
 * @brief Dense real polynomials in the monomial basis, confluent (Hermite)
 *        interpolation, sample grids and a small dense solver.
 *
 * Degrees handled by the rest of the library stay small (a few dozen at
 * most), so coefficients are kept in a plain vector and evaluated by Horner.
 */

#include "ulbkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace ulbkit {

class Polynomial {
public:
    Polynomial() : coeffs_{0.0} {}
    explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.push_back(0.0);
        trim();
    }

    static Polynomial constant(double c) { return Polynomial(std::vector<double>{c}); }
    static Polynomial monomial(int degree, double c = 1.0) {
        std::vector<double> v(static_cast<std::size_t>(degree) + 1, 0.0);
        v.back() = c;
        return Polynomial(std::move(v));
    }
    /// (t - r_0)(t - r_1)...
    static Polynomial from_roots(std::span<const double> roots) {
        Polynomial p = constant(1.0);
        for (double r : roots) p = p * Polynomial({-r, 1.0});
        return p;
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const double> coefficients() const { return coeffs_; }
    double coefficient(int i) const {
        return i >= 0 && i <= degree() ? coeffs_[static_cast<std::size_t>(i)] : 0.0;
    }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }

    double operator()(double t) const {
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    Polynomial derivative(int order = 1) const {
        if (order <= 0) return *this;
        if (order > degree()) return Polynomial();
        std::vector<double> d(coeffs_.size() - static_cast<std::size_t>(order));
        for (std::size_t i = 0; i < d.size(); ++i) {
            double f = 1.0;
            for (int k = 0; k < order; ++k) f *= static_cast<double>(i + static_cast<std::size_t>(order) - static_cast<std::size_t>(k));
            d[i] = f * coeffs_[i + static_cast<std::size_t>(order)];
        }
        return Polynomial(std::move(d));
    }

    double max_abs_coefficient() const {
        double m = 0.0;
        for (double c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<double> v(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }
    friend Polynomial operator*(double s, const Polynomial& p) {
        std::vector<double> v = p.coeffs_;
        for (double& c : v) c *= s;
        return Polynomial(std::move(v));
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        std::vector<double> v(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(v));
    }

private:
    void trim() {
        while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    }

    std::vector<double> coeffs_;
};

/// Derivative oracle used by Hermite interpolation: (t, order) -> f^{(order)}(t).
using DerivativeFn = std::function<double(double, int)>;

/**
 * Hermite interpolant through `nodes`, where node i is matched to order
 * multiplicity[i]-1. Built with Newton divided differences on the expanded
 * (confluent) node list and converted to monomial form.
 */
inline Polynomial hermite_interpolant(std::span<const double> nodes, std::span<const int> multiplicity,
                                      const DerivativeFn& f) {
    if (nodes.size() != multiplicity.size()) throw ParameterError("hermite_interpolant: size mismatch");
    std::vector<double> z;
    std::vector<std::size_t> group;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (multiplicity[i] < 1) throw ParameterError("hermite_interpolant: multiplicity must be >= 1");
        for (int r = 0; r < multiplicity[i]; ++r) {
            z.push_back(nodes[i]);
            group.push_back(i);
        }
    }
    const std::size_t m = z.size();
    if (m == 0) return Polynomial();

    // table[i] holds f[z_{i-j}, ..., z_i] for the current column j.
    std::vector<double> table(m);
    for (std::size_t i = 0; i < m; ++i) table[i] = f(z[i], 0);
    std::vector<double> newton(m);
    newton[0] = table[0];
    double factorial = 1.0;
    for (std::size_t j = 1; j < m; ++j) {
        factorial *= static_cast<double>(j);
        for (std::size_t i = m - 1; i >= j; --i) {
            if (group[i] == group[i - j]) {
                table[i] = f(z[i], static_cast<int>(j)) / factorial;
            } else {
                table[i] = (table[i] - table[i - 1]) / (z[i] - z[i - j]);
            }
            if (i == j) break;
        }
        newton[j] = table[j];
    }

    Polynomial p = Polynomial::constant(newton[m - 1]);
    for (std::size_t j = m - 1; j-- > 0;) p = p * Polynomial({-z[j], 1.0}) + Polynomial::constant(newton[j]);
    return p;
}

/// Chebyshev-Gauss points mapped to (a, b), ascending; endpoints excluded.
inline std::vector<double> chebyshev_grid(double a, double b, int count) {
    std::vector<double> g(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) / count);
        g[static_cast<std::size_t>(count - 1 - j)] = 0.5 * (a + b) + 0.5 * (b - a) * x;
    }
    return g;
}

inline std::vector<double> linspace(double a, double b, int count) {
    std::vector<double> g(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j)
        g[static_cast<std::size_t>(j)] = count == 1 ? a : a + (b - a) * j / (count - 1);
    return g;
}

/// Solves the dense square system A x = rhs (row-major A) by Gaussian
/// elimination with partial pivoting. Throws NumericalError when singular.
inline std::vector<double> solve_dense(std::vector<double> a, std::vector<double> rhs) {
    const std::size_t n = rhs.size();
    if (a.size() != n * n) throw ParameterError("solve_dense: dimension mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (a[piv * n + col] == 0.0) throw NumericalError("solve_dense: singular system");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
            std::swap(rhs[col], rhs[piv]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            double factor = a[r * n + col] / a[col * n + col];
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
            rhs[r] -= factor * rhs[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double acc = rhs[i];
        for (std::size_t c = i + 1; c < n; ++c) acc -= a[i * n + c] * x[c];
        x[i] = acc / a[i * n + i];
    }
    return x;
}

}  // namespace ulbkit
