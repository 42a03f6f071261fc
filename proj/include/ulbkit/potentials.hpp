#pragma once

/**
 * @file potentials.hpp
 * @brief Potentials h(t) on [-1,1) with closed-form derivatives of every
 *        order, and a sampled absolute-monotonicity check.
 *
 * Built-ins (t is the substituted inner product):
 *   riesz(p)        (2 - 2t)^{-p/2}         singular at t = 1
 *   gaussian(c)     e^{c t}
 *   log             -(1/2) log(2 - 2t)       singular at t = 1
 *   monomial(j)     (1 + t)^j
 *   series(c)       sum_j c_j (1 + t)^j,     c_j >= 0
 */

#include "ulbkit/error.hpp"
#include "ulbkit/polynomial.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace ulbkit {

class Potential {
public:
    /// (t, order) -> h^{(order)}(t).
    using Fn = std::function<double(double, int)>;

    Potential(std::string name, Fn fn, bool singular_at_one = false,
              int max_order = std::numeric_limits<int>::max())
        : name_(std::move(name)), fn_(std::move(fn)), singular_(singular_at_one), max_order_(max_order) {}

    const std::string& name() const { return name_; }
    bool singular_at_one() const { return singular_; }
    int max_order() const { return max_order_; }

    double operator()(double t) const { return derivative(t, 0); }

    double derivative(double t, int order) const {
        if (order < 0 || order > max_order_)
            throw ParameterError(name_ + ": derivative order " + std::to_string(order) + " not available");
        if (singular_ && t >= 1.0) throw DomainError(name_ + ": singular at t = " + std::to_string(t));
        return fn_(t, order);
    }

    DerivativeFn as_derivative_fn() const {
        return [self = *this](double t, int order) { return self.derivative(t, order); };
    }

    /// Taylor coefficients h^{(j)}(t0)/j!, j = 0..degree, as a polynomial in t.
    Polynomial taylor(double t0, int degree) const {
        Polynomial p;
        double fact = 1.0;
        for (int j = 0; j <= degree; ++j) {
            if (j > 0) fact *= j;
            std::vector<double> shift{-t0, 1.0};
            Polynomial term = Polynomial::constant(derivative(t0, j) / fact);
            for (int r = 0; r < j; ++r) term = term * Polynomial(shift);
            p = p + term;
        }
        return p;
    }

private:
    std::string name_;
    Fn fn_;
    bool singular_;
    int max_order_;
};

inline Potential riesz(double p) {
    if (!(p > 0.0)) throw ParameterError("riesz: power p must be positive");
    return Potential("riesz(p=" + std::to_string(p) + ")", [p](double t, int j) {
        double c = std::pow(2.0, j);
        for (int l = 0; l < j; ++l) c *= p / 2.0 + l;
        return c * std::pow(2.0 - 2.0 * t, -p / 2.0 - j);
    }, true);
}

inline Potential gaussian(double c) {
    if (!(c > 0.0)) throw ParameterError("gaussian: c must be positive");
    return Potential("gaussian(c=" + std::to_string(c) + ")",
                     [c](double t, int j) { return std::pow(c, j) * std::exp(c * t); });
}

inline Potential log_potential() {
    return Potential("log", [](double t, int j) {
        if (j == 0) return -0.5 * std::log(2.0 - 2.0 * t);
        return std::tgamma(static_cast<double>(j)) * std::pow(2.0, j - 1) * std::pow(2.0 - 2.0 * t, -j);
    }, true);
}

/// sum_j coeffs[j] (1 + t)^j.
inline Potential series(std::vector<double> coeffs) {
    if (coeffs.empty()) throw ParameterError("series: at least one coefficient required");
    for (double c : coeffs)
        if (!(c >= 0.0)) throw ParameterError("series: coefficients must be nonnegative");
    return Potential("series", [coeffs](double t, int order) {
        double s = 0.0;
        for (std::size_t j = static_cast<std::size_t>(order); j < coeffs.size(); ++j) {
            double f = 1.0;
            for (int r = 0; r < order; ++r) f *= static_cast<double>(j - static_cast<std::size_t>(r));
            s += coeffs[j] * f * std::pow(1.0 + t, static_cast<double>(j - static_cast<std::size_t>(order)));
        }
        return s;
    });
}

inline Potential monomial(int j) {
    if (j < 0) throw ParameterError("monomial: degree must be nonnegative");
    std::vector<double> c(static_cast<std::size_t>(j) + 1, 0.0);
    c.back() = 1.0;
    Potential s = series(std::move(c));
    return Potential("monomial(j=" + std::to_string(j) + ")", [s](double t, int order) { return s.derivative(t, order); });
}

/// A polynomial as a potential (not necessarily monotone).
inline Potential polynomial_potential(const Polynomial& p, std::string name = "polynomial") {
    return Potential(std::move(name), [p](double t, int order) { return p.derivative(order)(t); });
}

struct PotentialParams {
    double p = 1.0;
    double c = 1.0;
    int j = 1;
    std::vector<double> coeffs;
};

/// Built-in by name: riesz, gaussian, log, monomial, series.
inline Potential builtin(const std::string& name, const PotentialParams& params = {}) {
    if (name == "riesz") return riesz(params.p);
    if (name == "gaussian") return gaussian(params.c);
    if (name == "log") return log_potential();
    if (name == "monomial") return monomial(params.j);
    if (name == "series" || name == "custom-series") return series(params.coeffs);
    throw ParameterError("unknown potential '" + name + "'");
}

struct MonotonicityResult {
    bool ok = true;
    std::optional<int> order;
    std::optional<double> point;
    double value = 0.0;
};

/// h^{(i)}(t) >= -1e-12 for i = min_order..max_order and t in grid.
inline MonotonicityResult check_absolutely_monotone(const Potential& h, int max_order, const std::vector<double>& grid,
                                                    int min_order = 0) {
    for (int i = min_order; i <= max_order; ++i)
        for (double t : grid) {
            double v = h.derivative(t, i);
            if (!(v >= -1e-12)) return {false, i, t, v};
        }
    return {};
}

/// Default sample grid on [-1, 1): Chebyshev points plus the left endpoint.
inline std::vector<double> monotonicity_grid(int count = 400) {
    std::vector<double> g = chebyshev_grid(-1.0, 1.0, count);
    g.insert(g.begin(), -1.0);
    return g;
}

}  // namespace ulbkit
