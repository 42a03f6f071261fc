#pragma once

/**
 * @file asymptotics.hpp
 * @brief Fixed-level asymptotics on S^{n-1} and H(n,2): cardinalities
 *        M_n ~ n^{k-1+eps} ((2-eps)/(k-1+eps)! + delta), the scaled remainder
 *
 *   M_n (sum rho_i h(alpha_i) - sum_{m<=tau} h^{(m)}(0) b_m / m!),
 *
 * its limit, and the ratios ULB/M_n^2 and n (ULB/M_n^2 - h(0)).
 *
 * With delta_k = 1 + delta (k-1)! and R the Taylor polynomial of h at 0 of
 * degree tau, the limits are
 *   eps = 0:  delta_k^{2k-1} (h(-1/delta_k) - R(-1/delta_k)) - R(1)
 *   eps = 1:  rho (h(-1) - R(-1)) - R(1),   rho = lim M_n rho_0.
 */

#include "ulbkit/error.hpp"
#include "ulbkit/levenshtein.hpp"
#include "ulbkit/parallel.hpp"
#include "ulbkit/pmspace.hpp"
#include "ulbkit/potentials.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace ulbkit {

/// Integer: round the target and clamp into (D(tau), D(tau+1)].
/// Real: clamp the target into [D(tau)(1 + 1/n), D(tau+1)].
enum class CardinalityMode { Integer, Real };

struct AsymptoticQuery {
    Family family = Family::Sphere;
    int tau = 1;
    double delta = 0.0;
    std::optional<double> rho;
    Potential h;
    std::vector<int> n_range;
    CardinalityMode mode = CardinalityMode::Integer;

    Level level() const { return Level::from_tau(tau); }
    double delta_k() const { return 1.0 + delta * std::tgamma(static_cast<double>(level().k)); }
    SpaceDescriptor space(int n) const {
        if (family == Family::Sphere) return sphere(n);
        if (family == Family::Hamming) return hamming(n, 2);
        throw ParameterError("asymptotics: only the sphere and binary Hamming spaces are supported");
    }
};

inline void validate_query(const AsymptoticQuery& q) {
    if (q.family != Family::Sphere && q.family != Family::Hamming)
        throw ParameterError("asymptotics: only the sphere and binary Hamming spaces are supported");
    if (q.tau < 1) throw ParameterError("asymptotics: tau must be >= 1");
    if (!(q.delta >= 0.0)) throw ParameterError("asymptotics: delta must be nonnegative");
    if (q.rho && !(*q.rho >= 0.0 && *q.rho <= 1.0)) throw ParameterError("asymptotics: rho must lie in [0, 1]");
    if (q.n_range.empty()) throw ParameterError("asymptotics: empty n range");
}

struct CardinalityPoint {
    int n = 0;
    double target = 0.0;
    double M = 0.0;
    double lower = 0.0;  // D_n(tau)
    double upper = 0.0;  // D_n(tau+1)
    bool clamped = false;
};

inline CardinalityPoint cardinality_sequence(const AsymptoticQuery& q, int n) {
    validate_query(q);
    const Level lv = q.level();
    const SpaceDescriptor space = q.space(n);
    const int e = lv.k - 1 + lv.epsilon;
    CardinalityPoint c;
    c.n = n;
    c.target = std::pow(static_cast<double>(n), e) * ((2.0 - lv.epsilon) / std::tgamma(e + 1.0) + q.delta);
    c.lower = design_bound(space, lv.tau);
    c.upper = design_bound(space, lv.tau + 1);
    if (q.mode == CardinalityMode::Integer) {
        const double lo = std::floor(c.lower + 1e-9) + 1.0;
        const double hi = std::floor(c.upper + 1e-9);
        if (lo > hi)
            throw PreconditionError("asymptotics: no integer cardinality in (D(tau), D(tau+1)] at n = " +
                                    std::to_string(n));
        c.M = std::clamp(std::round(c.target), lo, hi);
    } else {
        const double lo = c.lower * (1.0 + 1.0 / n);
        if (lo > c.upper)
            throw PreconditionError("asymptotics: empty cardinality range at n = " + std::to_string(n));
        c.M = std::clamp(c.target, lo, c.upper);
    }
    c.clamped = c.M != c.target;
    return c;
}

inline double limit_expression(const AsymptoticQuery& q) {
    validate_query(q);
    const Level lv = q.level();
    const Polynomial R = q.h.taylor(0.0, lv.tau);
    if (lv.epsilon == 0) {
        const double dk = q.delta_k();
        const double x = -1.0 / dk;
        return std::pow(dk, 2 * lv.k - 1) * (q.h(x) - R(x)) - R(1.0);
    }
    if (!q.rho) throw ParameterError("asymptotics: rho is required when tau is even");
    return *q.rho * (q.h(-1.0) - R(-1.0)) - R(1.0);
}

struct AsymptoticRow {
    int n = 0;
    double M = 0.0;
    bool clamped = false;
    double s = 0.0;
    double alpha0 = 0.0;
    double alpha1 = 0.0;  // next node, 0 when the rule has a single node
    double rho0_M = 0.0;
    double remainder = 0.0;
    double ratio1 = 0.0;  // ULB / M^2
    double ratio2 = 0.0;  // n (ULB / M^2 - h(0))
    bool ok = true;
    std::string note;
};

/// One row per n; rows whose rule fails carry ok = false and a note.
inline std::vector<AsymptoticRow> remainder_sequence(const AsymptoticQuery& q) {
    validate_query(q);
    const Level lv = q.level();
    std::vector<double> taylor(static_cast<std::size_t>(lv.tau) + 1);
    double fact = 1.0;
    for (int m = 0; m <= lv.tau; ++m) {
        if (m > 0) fact *= m;
        taylor[static_cast<std::size_t>(m)] = q.h.derivative(0.0, m) / fact;
    }
    const double h0 = q.h(0.0);
    return parallel_map(q.n_range, [&](int n) {
        AsymptoticRow row;
        row.n = n;
        try {
            const SpaceDescriptor space = q.space(n);
            const CardinalityPoint c = cardinality_sequence(q, n);
            row.M = c.M;
            row.clamped = c.clamped;
            const QuadratureRule rule = quadrature_rule(space, c.M);
            if (rule.tau() != lv.tau) throw NumericalError("cardinality left the requested level");
            double sum = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * q.h(rule.nodes[i]);
            double comparison = 0.0;
            for (int m = 0; m <= lv.tau; ++m) comparison += taylor[static_cast<std::size_t>(m)] * moment(space, m);
            row.s = rule.s;
            row.alpha0 = rule.nodes.front();
            row.alpha1 = rule.nodes.size() > 1 ? rule.nodes[1] : 0.0;
            row.rho0_M = rule.weights.front() * c.M;
            row.remainder = c.M * (sum - comparison);
            row.ratio1 = sum;
            row.ratio2 = n * (sum - h0);
        } catch (const Error& e) {
            row.ok = false;
            row.note = e.what();
        }
        return row;
    });
}

struct RatioRow {
    int n = 0;
    double ratio1 = 0.0;
    double ratio2 = 0.0;
};

inline std::vector<RatioRow> corollary_ratios(const AsymptoticQuery& q) {
    std::vector<RatioRow> out;
    for (const AsymptoticRow& r : remainder_sequence(q))
        if (r.ok) out.push_back({r.n, r.ratio1, r.ratio2});
    return out;
}

}  // namespace ulbkit
