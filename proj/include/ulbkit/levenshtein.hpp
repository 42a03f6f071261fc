#pragma once

/**
 * @file levenshtein.hpp
 * @brief Design bounds D(tau), Levenshtein bounds L_tau(s), the inversion
 *        M -> s and the 1/M-quadrature rule.
 *
 * Levels are written tau = 2k - 1 + eps with eps in {0,1}. On level tau,
 * L_tau runs over [t_{k-1+eps}^{1,1-eps}, t_k^{1,eps}] (with t_0 := -1) and
 * increases from D(tau) to D(tau+1).
 *
 * Cardinalities are real numbers here; integer codes are the common case.
 */

#include "ulbkit/error.hpp"
#include "ulbkit/orthopoly.hpp"
#include "ulbkit/pmspace.hpp"
#include "ulbkit/polynomial.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace ulbkit {

struct Level {
    int tau = 1;
    int k = 1;
    int epsilon = 0;

    static Level from_tau(int tau) {
        if (tau < 1) throw ParameterError("level: tau must be >= 1");
        return Level{tau, (tau + 1) / 2, tau % 2 == 0 ? 1 : 0};
    }
};

struct QuadratureRule {
    double M = 0.0;
    Level level;
    double s = 0.0;
    std::vector<double> nodes;    // alpha_0 < ... < alpha_{k-1+eps} = s
    std::vector<double> weights;  // rho_i > 0
    bool odd_branch = false;
    /// |1/M + sum rho_i alpha_i^m - b_m| for m = 0..tau.
    std::vector<double> power_sum_residuals;

    int tau() const { return level.tau; }
    int k() const { return level.k; }
    int epsilon() const { return level.epsilon; }
};

/// D(tau) = q_1^{1-eps} sum_{i=0}^{k-1+eps} r_i^{0,1-eps}.
inline double design_bound(const SpaceDescriptor& space, int tau) {
    const Level lv = Level::from_tau(tau);
    const int top = lv.k - 1 + lv.epsilon;
    OrthoSystem sys = adjacent_system(space, 0, 1 - lv.epsilon, top);
    double sum = 0.0;
    for (int i = 0; i <= top; ++i) sum += sys.norm(i);
    return (lv.epsilon == 0 ? q1(space) : 1.0) * sum;
}

namespace detail {

/// Everything L_tau needs, built once per (space, level).
struct LevelData {
    Level level;
    double q1 = 0.0;
    OrthoSystem sys1;  // (1, eps)
    OrthoSystem sys0;  // (0, eps)
    double rsum = 0.0; // sum_{i<k} r_i^{0,eps}
    double left = -1.0;
    double right = 1.0;

    LevelData(const SpaceDescriptor& space, Level lv)
        : level(lv),
          q1(ulbkit::q1(space)),
          sys1(adjacent_system(space, 1, lv.epsilon, lv.k)),
          sys0(adjacent_system(space, 0, lv.epsilon, lv.k)) {
        for (int i = 0; i < lv.k; ++i) rsum += sys0.norm(i);
        const int lk = lv.k - 1 + lv.epsilon;
        if (lk > 0) left = adjacent_system(space, 1, 1 - lv.epsilon, lk).largest_zero(lk);
        right = sys1.largest_zero(lv.k);
    }

    double bound(double s) const {
        const double pre = level.epsilon == 1 ? q1 : 1.0;
        return pre * (1.0 - sys1.eval(level.k - 1, s) / sys0.eval(level.k, s)) * rsum;
    }
};

inline double interval_slack(double a, double b) { return 1e-12 * (1.0 + std::abs(a) + std::abs(b)); }

/// Bisection for L(s) = M on [lo, hi], L increasing; endpoints returned on ties.
template <class F>
double invert_increasing(const F& L, double M, double lo, double hi) {
    const double tol = 1e-10 * M;
    double flo = L(lo), fhi = L(hi);
    if (std::abs(fhi - M) <= tol) return hi;
    if (std::abs(flo - M) <= tol) return lo;
    if (!(flo < M && M < fhi))
        throw NumericalError("solve_separation: cardinality " + std::to_string(M) + " not bracketed by [" +
                             std::to_string(flo) + ", " + std::to_string(fhi) + "]");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = L(mid);
        if (fm < M)
            lo = mid;
        else
            hi = mid;
    }
    double s = 0.5 * (lo + hi);
    if (std::abs(L(s) - M) > tol) {
        // The bracket collapsed to machine width; keep the closer end.
        s = std::abs(L(lo) - M) < std::abs(L(hi) - M) ? lo : hi;
        if (std::abs(L(s) - M) > 1e-8 * M)
            throw NumericalError("solve_separation: bisection did not reach the requested accuracy");
    }
    return s;
}

}  // namespace detail

/// Validity interval [t_{k-1+eps}^{1,1-eps}, t_k^{1,eps}] of L_tau.
inline std::pair<double, double> lev_interval(const SpaceDescriptor& space, int tau) {
    detail::LevelData d(space, Level::from_tau(tau));
    return {d.left, d.right};
}

/// L_tau(s) = q_1^eps (1 - Q_{k-1}^{1,eps}(s) / Q_k^{0,eps}(s)) sum_{i<k} r_i^{0,eps}.
inline double lev_bound(const SpaceDescriptor& space, int tau, double s) {
    detail::LevelData d(space, Level::from_tau(tau));
    const double slack = detail::interval_slack(d.left, d.right);
    if (s < d.left - slack || s > d.right + slack)
        throw DomainError("lev_bound: s = " + std::to_string(s) + " outside the validity interval [" +
                          std::to_string(d.left) + ", " + std::to_string(d.right) + "] for tau = " +
                          std::to_string(tau));
    return d.bound(s);
}

/**
 * The unique level with D(tau) < M <= D(tau+1). The first interval is closed
 * on the left, so M = D(1) (two antipodal points on the sphere) has tau = 1.
 */
inline Level tau_for_cardinality(const SpaceDescriptor& space, double M) {
    if (!(M >= 2.0)) throw ParameterError("cardinality must be >= 2");
    const double tol = 1e-9 * M;
    double lower = 0.0;
    try {
        lower = design_bound(space, 1);
        if (M < lower - tol)
            throw PreconditionError("cardinality " + std::to_string(M) + " is below D(1) = " + std::to_string(lower) +
                                    " on " + space.name());
        for (int tau = 1;; ++tau) {
            double upper = design_bound(space, tau + 1);
            if (M <= upper + tol) return Level::from_tau(tau);
            lower = upper;
        }
    } catch (const DegreeOverflow&) {
        throw ParameterError("cardinality " + std::to_string(M) + " exceeds the range covered by design bounds on " +
                             space.name() + " (largest D = " + std::to_string(lower) + ")");
    }
}

/// s with L_tau(s) = M on the level of M.
inline double solve_separation(const SpaceDescriptor& space, double M) {
    const Level lv = tau_for_cardinality(space, M);
    detail::LevelData d(space, lv);
    return detail::invert_increasing([&](double s) { return d.bound(s); }, M, d.left, d.right);
}

namespace detail {

inline QuadratureRule build_rule(const SpaceDescriptor& space, const LevelData& d, double M, double s, bool odd) {
    const Level lv = d.level;
    QuadratureRule rule;
    rule.M = M;
    rule.level = lv;
    rule.s = s;
    rule.odd_branch = odd;
    if (lv.epsilon == 1) rule.nodes.push_back(-1.0);
    std::vector<double> inner = d.sys1.kernel_zeros(lv.k - 1, s);
    if (static_cast<int>(inner.size()) != lv.k - 1)
        throw NumericalError("quadrature_rule: expected " + std::to_string(lv.k - 1) + " kernel zeros");
    for (double z : inner) {
        if (!(z > -1.0 && z < s)) throw NumericalError("quadrature_rule: kernel zero outside (-1, s)");
        rule.nodes.push_back(z);
    }
    rule.nodes.push_back(s);
    for (std::size_t i = 1; i < rule.nodes.size(); ++i)
        if (!(rule.nodes[i] > rule.nodes[i - 1])) throw NumericalError("quadrature_rule: nodes not strictly increasing");

    // sum_i rho_i Q_m(alpha_i) = delta_{m0} - 1/M, m = 0..k-1+eps
    const std::size_t n = rule.nodes.size();
    std::vector<double> A(n * n), rhs(n);
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t i = 0; i < n; ++i) A[m * n + i] = q_eval(space, static_cast<int>(m), rule.nodes[i]);
        rhs[m] = (m == 0 ? 1.0 : 0.0) - 1.0 / M;
    }
    rule.weights = solve_dense(std::move(A), std::move(rhs));
    for (std::size_t i = 0; i < n; ++i)
        if (!(rule.weights[i] > 0.0))
            throw NumericalError("quadrature_rule: nonpositive weight rho_" + std::to_string(i) + " = " +
                                 std::to_string(rule.weights[i]));

    const int top = odd ? 2 * lv.k - 1 : lv.tau;
    for (int m = 0; m <= top; ++m) {
        double ps = 1.0 / M;
        for (std::size_t i = 0; i < n; ++i) ps += rule.weights[i] * std::pow(rule.nodes[i], m);
        double res = std::abs(ps - moment(space, m));
        rule.power_sum_residuals.push_back(res);
        if (res > 1e-8)
            throw NumericalError("quadrature_rule: power sum m = " + std::to_string(m) + " off by " +
                                 std::to_string(res));
    }
    return rule;
}

}  // namespace detail

/// The 1/M-quadrature rule: f_0 = f(1)/M + sum rho_i f(alpha_i) for deg f <= tau.
inline QuadratureRule quadrature_rule(const SpaceDescriptor& space, double M) {
    const Level lv = tau_for_cardinality(space, M);
    detail::LevelData d(space, lv);
    double s = detail::invert_increasing([&](double x) { return d.bound(x); }, M, d.left, d.right);
    return detail::build_rule(space, d, M, s, false);
}

/**
 * Rule of the odd level 2k-1 continued past t_k^{1,0} toward the largest
 * zero t_k of Q_k, which covers every M in (D(2k-1), D(2k+1)].
 */
inline QuadratureRule odd_branch_rule(const SpaceDescriptor& space, double M) {
    const Level main = tau_for_cardinality(space, M);
    const Level lv = Level::from_tau(main.epsilon == 1 ? main.tau - 1 : main.tau);
    detail::LevelData d(space, lv);
    auto L = [&](double x) { return d.bound(x); };
    double hi = d.right;
    if (M > L(hi) * (1.0 + 1e-10)) {
        const double tk = adjacent_system(space, 0, 0, lv.k).largest_zero(lv.k);
        // L blows up at t_k; step toward it until M is bracketed.
        double gap = tk - d.right;
        double lo = d.right;
        for (int it = 0; it < 200 && L(hi) < M; ++it) {
            lo = hi;
            gap *= 0.5;
            hi = tk - gap;
        }
        if (L(hi) < M) throw NumericalError("odd_branch_rule: could not bracket the cardinality");
        double s = detail::invert_increasing(L, M, lo, hi);
        return detail::build_rule(space, d, M, s, true);
    }
    double s = detail::invert_increasing(L, M, d.left, d.right);
    return detail::build_rule(space, d, M, s, true);
}

/// f(t) = (t+1)^eps (t - s) (T_{k-1}^{1,eps}(t, s))^2.
inline Polynomial lev_polynomial(const SpaceDescriptor& space, const QuadratureRule& rule) {
    const Level lv = rule.level;
    OrthoSystem sys = adjacent_system(space, 1, lv.epsilon, lv.k);
    Polynomial T;
    for (int i = 0; i < lv.k; ++i) T = T + (sys.norm(i) * sys.eval(i, rule.s)) * sys.polynomial(i);
    Polynomial f = Polynomial({-rule.s, 1.0}) * T * T;
    if (lv.epsilon == 1) f = Polynomial({1.0, 1.0}) * f;
    return f;
}

inline Polynomial lev_polynomial(const SpaceDescriptor& space, double M) {
    return lev_polynomial(space, quadrature_rule(space, M));
}

}  // namespace ulbkit
