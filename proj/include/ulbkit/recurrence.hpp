#pragma once

/**
 * @file recurrence.hpp
 * @brief Monic three-term recurrences  p_{i+1}(t) = (t - alpha_i) p_i(t) - beta_i p_{i-1}(t)
 *        and the Gauss rules they generate.
 *
 * beta_0 is the total mass of the measure (it never enters the recurrence).
 * Closed-form coefficients exist for Jacobi weights; finite discrete measures
 * go through the Stieltjes procedure.
 */

#include "ulbkit/error.hpp"
#include "ulbkit/tridiagonal.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace ulbkit {

struct Recurrence {
    std::vector<double> alpha;  // alpha_0 .. alpha_{N-1}
    std::vector<double> beta;   // beta_0 (mass) .. beta_{N-1}

    int size() const { return static_cast<int>(alpha.size()); }
};

/// Discrete measure: point masses `masses` at `nodes`.
struct DiscreteMeasure {
    std::vector<double> nodes;
    std::vector<double> masses;

    double total_mass() const {
        double s = 0.0;
        for (double m : masses) s += m;
        return s;
    }
    template <class F>
    double integrate(F&& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += masses[i] * f(nodes[i]);
        return s;
    }
};

/// Monic Jacobi recurrence for the weight (1-t)^a (1+t)^b on [-1,1], a,b > -1,
/// with beta_0 normalized to 1 (probability measure).
inline Recurrence jacobi_recurrence(double a, double b, int count) {
    if (!(a > -1.0 && b > -1.0)) throw ParameterError("jacobi_recurrence: exponents must exceed -1");
    Recurrence r;
    r.alpha.resize(static_cast<std::size_t>(count));
    r.beta.resize(static_cast<std::size_t>(count));
    const double ab = a + b;
    for (int i = 0; i < count; ++i) {
        const double di = i;
        const double s = 2.0 * di + ab;
        if (i == 0) {
            r.alpha[0] = (b - a) / (ab + 2.0);
            r.beta[0] = 1.0;
        } else {
            r.alpha[static_cast<std::size_t>(i)] = (b * b - a * a) / (s * (s + 2.0));
            if (i == 1) {
                r.beta[1] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
            } else {
                r.beta[static_cast<std::size_t>(i)] =
                    4.0 * di * (di + a) * (di + b) * (di + ab) / (s * s * (s + 1.0) * (s - 1.0));
            }
        }
    }
    return r;
}

/// Stieltjes procedure on a discrete measure, generating up to `count`
/// coefficient pairs. `count` may not exceed the number of support points.
inline Recurrence stieltjes(const DiscreteMeasure& mu, int count) {
    const std::size_t n = mu.nodes.size();
    if (count > static_cast<int>(n))
        throw DegreeOverflow("stieltjes: requested degree exceeds the support size of the measure");
    Recurrence r;
    std::vector<double> prev(n, 0.0), cur(n, 1.0), next(n);
    double prev_norm = 1.0;
    for (int i = 0; i < count; ++i) {
        double norm = 0.0, moment = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            double w = mu.masses[l] * cur[l] * cur[l];
            norm += w;
            moment += w * mu.nodes[l];
        }
        if (!(norm > 0.0)) throw NumericalError("stieltjes: lost positivity of the norm");
        double alpha = moment / norm;
        double beta = i == 0 ? norm : norm / prev_norm;
        r.alpha.push_back(alpha);
        r.beta.push_back(beta);
        for (std::size_t l = 0; l < n; ++l)
            next[l] = (mu.nodes[l] - alpha) * cur[l] - (i == 0 ? 0.0 : beta) * prev[l];
        prev.swap(cur);
        cur.swap(next);
        prev_norm = norm;
    }
    return r;
}

/// Zeros of p_degree, i.e. eigenvalues of the leading Jacobi block.
inline std::vector<double> recurrence_zeros(const Recurrence& r, int degree) {
    if (degree > r.size()) throw DegreeOverflow("recurrence_zeros: degree beyond recurrence length");
    std::vector<double> diag(r.alpha.begin(), r.alpha.begin() + degree);
    std::vector<double> off(r.beta.begin(), r.beta.begin() + degree);
    return tridiagonal_eigenvalues(diag, off);
}

/// N-point Gauss rule for the measure of `r` (first N coefficients used).
/// Weights from Christoffel numbers with the orthonormal recurrence.
inline DiscreteMeasure gauss_rule(const Recurrence& r, int points) {
    DiscreteMeasure g;
    g.nodes = recurrence_zeros(r, points);
    g.masses.resize(g.nodes.size());
    const double mass = r.beta[0];
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
        const double t = g.nodes[k];
        double pm1 = 0.0, p = 1.0, sum = 1.0;
        for (int i = 0; i + 1 < points; ++i) {
            double sb_next = std::sqrt(r.beta[static_cast<std::size_t>(i) + 1]);
            double sb = i == 0 ? 0.0 : std::sqrt(r.beta[static_cast<std::size_t>(i)]);
            double pn = ((t - r.alpha[static_cast<std::size_t>(i)]) * p - sb * pm1) / sb_next;
            pm1 = p;
            p = pn;
            sum += p * p;
        }
        g.masses[k] = mass / sum;
    }
    return g;
}

}  // namespace ulbkit
