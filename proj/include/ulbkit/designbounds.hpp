#pragma once

/**
 * @file designbounds.hpp
 * @brief Validators for energy bounds on designs and on codes of prescribed
 *        separation. Each takes a candidate polynomial, checks the LP
 *        conditions and only then returns M (f_0 M - f(1)).
 *
 *   lower            (D1) f <= h on I       (D2) f_i >= 0, i >= tau+1
 *   upper            (E1) g >= h on I       (E2) g_i <= 0, i >= tau+1
 *   separated_upper  (F1) f >= h on T cap [-1,s]   (F2) f_i <= 0, 1 <= i <= deg f
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

/// Admissible inner products I: an interval [lo, hi] or a finite list.
struct InnerProductSet {
    enum class Kind { Interval, List };
    Kind kind = Kind::Interval;
    double lo = -1.0;
    double hi = 1.0;
    bool hi_open = true;
    std::vector<double> values;

    static InnerProductSet interval(double lo, double hi, bool hi_open = false) {
        if (!(lo <= hi)) throw ParameterError("inner product interval must satisfy lo <= hi");
        return {Kind::Interval, lo, hi, hi_open, {}};
    }
    static InnerProductSet list(std::vector<double> v) {
        if (v.empty()) throw ParameterError("inner product list must be nonempty");
        return {Kind::List, -1.0, 1.0, false, std::move(v)};
    }
    /// T(M) cap [-1, 1).
    static InnerProductSet default_for(const SpaceDescriptor& space) {
        if (space.finite()) {
            std::vector<double> v;
            for (double t : space.tvalues().values)
                if (t < 1.0) v.push_back(t);
            return list(std::move(v));
        }
        return interval(-1.0, 1.0, true);
    }

    /// Sample points; finite spaces keep only points of T.
    std::vector<double> samples(const SpaceDescriptor& space, int count = 2000) const {
        std::vector<double> pts;
        if (kind == Kind::List) {
            pts = values;
        } else {
            if (space.finite()) {
                for (double t : space.tvalues().values)
                    if (t >= lo && (hi_open ? t < hi : t <= hi)) pts.push_back(t);
                return pts;
            }
            pts = chebyshev_grid(lo, hi, count);
            pts.push_back(lo);
            if (!hi_open) pts.push_back(hi);
        }
        for (double t : pts)
            if (t < -1.0 || t >= 1.0) throw ParameterError("inner product set must lie in [-1, 1)");
        return pts;
    }
};

enum class Direction { Lower, Upper, SeparatedUpper };

struct DesignEnergyQuery {
    SpaceDescriptor space;
    int tau = 1;
    double M = 2.0;
    std::optional<InnerProductSet> I;
    Polynomial f;
    Potential h;
    Direction direction = Direction::Lower;
    double s = 0.0;  // SeparatedUpper only
};

struct DesignBoundResult {
    double value = 0.0;  // sum convention
    double f0 = 0.0;
    std::vector<double> q_coefficients;
    std::size_t points_checked = 0;
};

namespace detail {

inline double coefficient_tolerance(const QExpansion& e) {
    double scale = 1.0;
    for (double v : e.coeffs) scale = std::max(scale, std::abs(v));
    return 1e-8 * scale;
}

inline void require_design_cardinality(const DesignEnergyQuery& q) {
    if (q.tau < 1) throw ParameterError("design query: tau must be >= 1");
    const double D = design_bound(q.space, q.tau);
    if (q.M < D * (1.0 - 1e-12))
        throw PreconditionError("design query: M = " + std::to_string(q.M) + " is below D(tau) = " + std::to_string(D));
}

/// sign = +1: f <= h required; sign = -1: f >= h required.
inline std::size_t check_pointwise(const char* cond, const Polynomial& f, const Potential& h,
                                   const std::vector<double>& pts, int sign) {
    for (double t : pts) {
        const double hv = h(t);
        const double gap = sign * (f(t) - hv);
        if (gap > 1e-9 * (1.0 + std::abs(hv)))
            throw ConditionViolation(cond, "polynomial " + std::string(sign > 0 ? "exceeds" : "is below") +
                                               " h at t = " + std::to_string(t),
                                     std::nullopt, t);
    }
    return pts.size();
}

inline DesignBoundResult finish(const DesignEnergyQuery& q, const QExpansion& e, std::size_t pts) {
    DesignBoundResult r;
    r.f0 = e.coefficient(0);
    r.q_coefficients = e.coeffs;
    r.value = q.M * (r.f0 * q.M - q.f(1.0));
    r.points_checked = pts;
    return r;
}

}  // namespace detail

inline DesignBoundResult design_lower_bound(const DesignEnergyQuery& q) {
    detail::require_design_cardinality(q);
    const InnerProductSet I = q.I.value_or(InnerProductSet::default_for(q.space));
    QExpansion e = expand_in_q(q.space, q.f);
    const double tol = detail::coefficient_tolerance(e);
    for (int i = q.tau + 1; i < static_cast<int>(e.coeffs.size()); ++i)
        if (e.coefficient(i) < -tol)
            throw ConditionViolation("D2", "coefficient f_" + std::to_string(i) + " = " +
                                               std::to_string(e.coefficient(i)) + " is negative", i);
    std::size_t pts = detail::check_pointwise("D1", q.f, q.h, I.samples(q.space), +1);
    return detail::finish(q, e, pts);
}

inline DesignBoundResult design_upper_bound(const DesignEnergyQuery& q) {
    detail::require_design_cardinality(q);
    const InnerProductSet I = q.I.value_or(InnerProductSet::default_for(q.space));
    QExpansion e = expand_in_q(q.space, q.f);
    const double tol = detail::coefficient_tolerance(e);
    for (int i = q.tau + 1; i < static_cast<int>(e.coeffs.size()); ++i)
        if (e.coefficient(i) > tol)
            throw ConditionViolation("E2", "coefficient g_" + std::to_string(i) + " = " +
                                               std::to_string(e.coefficient(i)) + " is positive", i);
    std::size_t pts = detail::check_pointwise("E1", q.f, q.h, I.samples(q.space), -1);
    return detail::finish(q, e, pts);
}

/// Upper bound on the largest energy of M-point codes whose inner products stay <= s.
inline DesignBoundResult separated_upper_bound(const DesignEnergyQuery& q) {
    if (q.M < 2.0) throw ParameterError("separated query: M must be >= 2");
    if (!(q.s >= -1.0 && q.s < 1.0)) throw ParameterError("separated query: s must lie in [-1, 1)");
    std::vector<double> pts;
    if (q.space.finite()) {
        for (double t : q.space.tvalues().values)
            if (t <= q.s) pts.push_back(t);
    } else {
        pts = q.s > -1.0 ? chebyshev_grid(-1.0, q.s, 2000) : std::vector<double>{};
        pts.push_back(-1.0);
        pts.push_back(q.s);
    }
    QExpansion e = expand_in_q(q.space, q.f);
    const double tol = detail::coefficient_tolerance(e);
    for (int i = 1; i < static_cast<int>(e.coeffs.size()); ++i)
        if (e.coefficient(i) > tol)
            throw ConditionViolation("F2", "coefficient f_" + std::to_string(i) + " = " +
                                               std::to_string(e.coefficient(i)) + " is positive", i);
    std::size_t n = detail::check_pointwise("F1", q.f, q.h, pts, -1);
    return detail::finish(q, e, n);
}

inline DesignBoundResult evaluate_query(const DesignEnergyQuery& q) {
    switch (q.direction) {
        case Direction::Lower: return design_lower_bound(q);
        case Direction::Upper: return design_upper_bound(q);
        case Direction::SeparatedUpper: return separated_upper_bound(q);
    }
    throw ParameterError("unknown direction");
}

}  // namespace ulbkit
