#pragma once

/**
 * @file ulb.hpp
 * @brief Universal lower bound E_h(M) >= M^2 sum rho_i h(alpha_i), its
 *        Hermite certificate, test functions P_j and the improvement by Q_j.
 *
 * Energies use the full ordered pair sum over x != y unless the mean
 * convention (divide by M) is requested.
 */

#include "ulbkit/error.hpp"
#include "ulbkit/levenshtein.hpp"
#include "ulbkit/orthopoly.hpp"
#include "ulbkit/pmspace.hpp"
#include "ulbkit/polynomial.hpp"
#include "ulbkit/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace ulbkit {

enum class EnergyConvention { Sum, Mean };

inline const char* convention_name(EnergyConvention c) { return c == EnergyConvention::Sum ? "sum" : "mean"; }

inline EnergyConvention parse_convention(const std::string& s) {
    if (s == "sum") return EnergyConvention::Sum;
    if (s == "mean") return EnergyConvention::Mean;
    throw ParameterError("energy convention must be 'sum' or 'mean'");
}

struct CertificateChecks {
    bool below_h = false;
    bool f_geq = false;
    double min_q_coefficient = 0.0;  // over i >= 1
    double f0 = 0.0;
    double max_excess = 0.0;         // max over the grid of f - h
    std::optional<double> worst_point;
    std::size_t grid_size = 0;

    bool ok() const { return below_h && f_geq; }
};

struct Improvement {
    int j = 0;
    double eta = 0.0;
    double p_j = 0.0;
    double base_value_sum = 0.0;
    double predicted_gain = 0.0;  // -M^2 eta P_j
};

struct UlbReport {
    std::string space;
    double M = 0.0;
    std::string potential;
    QuadratureRule rule;
    double value_sum = 0.0;
    double value_mean = 0.0;
    double certificate_value_sum = 0.0;  // M (f_0 M - f(1))
    Polynomial certificate;
    CertificateChecks checks;
    EnergyConvention convention = EnergyConvention::Sum;
    std::optional<Improvement> improvement;

    double value() const { return convention == EnergyConvention::Sum ? value_sum : value_mean; }
};

struct TestFunctionReport {
    double M = 0.0;
    double s = 0.0;
    Level level;
    std::vector<std::pair<int, double>> values;
    std::optional<int> first_negative_j;
};

/// Points on which f <= h is sampled: T minus {1} for finite spaces,
/// otherwise `count` Chebyshev points of (-1,1), -1 itself and `extra`.
inline std::vector<double> verification_grid(const SpaceDescriptor& space, const std::vector<double>& extra = {},
                                             int count = 2000) {
    std::vector<double> g;
    if (space.finite()) {
        for (double t : space.tvalues().values)
            if (t < 1.0) g.push_back(t);
        return g;
    }
    g = chebyshev_grid(-1.0, 1.0, count);
    g.push_back(-1.0);
    for (double t : extra)
        if (t >= -1.0 && t < 1.0) g.push_back(t);
    std::sort(g.begin(), g.end());
    return g;
}

/// H_T(h): nodes doubled, except -1 (eps = 1) which is matched to order 0.
inline Polynomial hermite_certificate(const QuadratureRule& rule, const Potential& h) {
    std::vector<int> mult(rule.nodes.size(), 2);
    if (rule.epsilon() == 1) mult.front() = 1;
    return hermite_interpolant(rule.nodes, mult, h.as_derivative_fn());
}

/// f <= h on the verification grid and f_i >= 0 for i >= 1.
inline CertificateChecks verify_certificate(const SpaceDescriptor& space, const Polynomial& f, const Potential& h,
                                            const std::vector<double>& extra_points = {}) {
    CertificateChecks c;
    std::vector<double> grid = verification_grid(space, extra_points);
    c.grid_size = grid.size();
    c.below_h = true;
    c.max_excess = -std::numeric_limits<double>::infinity();
    for (double t : grid) {
        const double hv = h(t);
        const double excess = f(t) - hv;
        if (excess > c.max_excess) {
            c.max_excess = excess;
            c.worst_point = t;
        }
        if (excess > 1e-9 * (1.0 + std::abs(hv))) c.below_h = false;
    }
    QExpansion e = expand_in_q(space, f);
    c.f0 = e.coefficient(0);
    double scale = 1.0;
    for (double v : e.coeffs) scale = std::max(scale, std::abs(v));
    c.min_q_coefficient = e.coeffs.size() > 1 ? e.min_coefficient(1) : 0.0;
    c.f_geq = c.min_q_coefficient >= -1e-8 * scale;
    return c;
}

namespace detail {

inline void require_monotone(const Potential& h, int max_order) {
    // Order 0 only shifts the bound by a constant and does not enter the LP argument.
    MonotonicityResult r = check_absolutely_monotone(h, max_order, monotonicity_grid(), 1);
    if (!r.ok)
        throw PreconditionError(h.name() + " is not absolutely monotone: derivative of order " +
                                std::to_string(*r.order) + " is " + std::to_string(r.value) + " at t = " +
                                std::to_string(*r.point));
}

inline UlbReport report_from_rule(const SpaceDescriptor& space, const QuadratureRule& rule, const Potential& h,
                                  EnergyConvention conv) {
    UlbReport rep;
    rep.space = space.name();
    rep.M = rule.M;
    rep.potential = h.name();
    rep.rule = rule;
    rep.convention = conv;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * h(rule.nodes[i]);
    rep.value_sum = rule.M * rule.M * s;
    rep.value_mean = rep.value_sum / rule.M;
    rep.certificate = hermite_certificate(rule, h);
    rep.checks = verify_certificate(space, rep.certificate, h, rule.nodes);
    rep.certificate_value_sum = rule.M * (rep.checks.f0 * rule.M - rep.certificate(1.0));
    if (!rep.checks.ok())
        throw NumericalError("ULB certificate failed validation (below_h=" + std::string(rep.checks.below_h ? "1" : "0") +
                             ", f_geq=" + std::string(rep.checks.f_geq ? "1" : "0") + ")");
    return rep;
}

}  // namespace detail

/// E_h(M) >= M^2 sum rho_i h(alpha_i) with the validated Hermite certificate.
inline UlbReport ulb(const SpaceDescriptor& space, double M, const Potential& h,
                     EnergyConvention conv = EnergyConvention::Sum) {
    QuadratureRule rule = quadrature_rule(space, M);
    detail::require_monotone(h, rule.tau() + 1);
    return detail::report_from_rule(space, rule, h, conv);
}

/// ULB from the odd level continued over the even interval.
inline UlbReport ulb_odd_branch(const SpaceDescriptor& space, double M, const Potential& h,
                                EnergyConvention conv = EnergyConvention::Sum) {
    QuadratureRule rule = odd_branch_rule(space, M);
    detail::require_monotone(h, rule.tau() + 1);
    return detail::report_from_rule(space, rule, h, conv);
}

/// P_j = 1/M + sum rho_i Q_j(alpha_i).
inline double test_function(const SpaceDescriptor& space, const QuadratureRule& rule, int j) {
    double p = 1.0 / rule.M;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) p += rule.weights[i] * q_eval(space, j, rule.nodes[i]);
    return p;
}

inline TestFunctionReport test_functions(const SpaceDescriptor& space, double M, int jmin, int jmax) {
    if (jmin < 0 || jmax < jmin) throw ParameterError("test_functions: invalid j range");
    QuadratureRule rule = quadrature_rule(space, M);
    TestFunctionReport rep;
    rep.M = M;
    rep.s = rule.s;
    rep.level = rule.level;
    for (int j = jmin; j <= jmax; ++j) {
        double p = test_function(space, rule, j);
        rep.values.emplace_back(j, p);
        if (j > rule.tau() && p < -1e-8 && !rep.first_negative_j) rep.first_negative_j = j;
    }
    return rep;
}

/**
 * f = eta Q_j + H_T(h - eta Q_j) for a test function P_j < 0. The bound
 * grows by -M^2 eta P_j. eta starts at the largest value keeping the
 * derivatives of orders 1..max(tau+1, j) of h - eta Q_j nonnegative on a
 * sample grid and is halved until a denser grid confirms it.
 */
inline UlbReport improve_with_qj(const SpaceDescriptor& space, double M, const Potential& h, int j,
                                 EnergyConvention conv = EnergyConvention::Sum, double eta_min = 1e-12) {
    QuadratureRule rule = quadrature_rule(space, M);
    if (j <= rule.tau()) throw PreconditionError("improve: j must exceed tau = " + std::to_string(rule.tau()));
    const double pj = test_function(space, rule, j);
    if (!(pj < -1e-8))
        throw PreconditionError("improve: test function P_" + std::to_string(j) + " = " + std::to_string(pj) +
                                " is not negative");
    detail::require_monotone(h, std::max(rule.tau() + 1, j + 1));
    UlbReport base = detail::report_from_rule(space, rule, h, conv);

    const Polynomial qj = q_polynomial(space, j);
    const int top = std::max(rule.tau() + 1, j);
    std::vector<Polynomial> dq;
    for (int i = 0; i <= top; ++i) dq.push_back(qj.derivative(i));

    auto admissible = [&](double eta, const std::vector<double>& grid) {
        for (int i = 1; i <= top; ++i)
            for (double t : grid)
                if (h.derivative(t, i) - eta * dq[static_cast<std::size_t>(i)](t) < 0.0) return false;
        return true;
    };

    std::vector<double> coarse = monotonicity_grid(400);
    double eta = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= top; ++i)
        for (double t : coarse) {
            const double d = dq[static_cast<std::size_t>(i)](t);
            if (d > 0.0) eta = std::min(eta, h.derivative(t, i) / d);
        }
    if (!std::isfinite(eta)) eta = 1.0;
    std::vector<double> fine = monotonicity_grid(1600);
    while (eta >= eta_min && !admissible(eta, fine)) eta *= 0.5;
    if (eta < eta_min) throw NumericalError("improve: no admissible eta above " + std::to_string(eta_min));

    Potential htilde("h - eta Q_j", [h, dq, eta](double t, int order) {
        const double q = order < static_cast<int>(dq.size()) ? dq[static_cast<std::size_t>(order)](t) : 0.0;
        return h.derivative(t, order) - eta * q;
    }, h.singular_at_one());

    UlbReport rep;
    rep.space = space.name();
    rep.M = M;
    rep.potential = h.name();
    rep.rule = rule;
    rep.convention = conv;
    rep.certificate = eta * qj + hermite_certificate(rule, htilde);
    rep.checks = verify_certificate(space, rep.certificate, h, rule.nodes);
    rep.certificate_value_sum = M * (rep.checks.f0 * M - rep.certificate(1.0));
    rep.value_sum = rep.certificate_value_sum;
    rep.value_mean = rep.value_sum / M;
    rep.improvement = Improvement{j, eta, pj, base.value_sum, -M * M * eta * pj};
    if (!rep.checks.ok()) throw NumericalError("improve: certificate failed validation");
    return rep;
}

}  // namespace ulbkit
