#pragma once

/**
 * @file pmspace.hpp
 * @brief The four polynomial metric space families: unit spheres S^{n-1},
 *        Hamming spaces H(n,q), Johnson spaces J(n,w) and the projective
 *        spaces FP^{n-1} over F = R, C, H.
 *
 * A descriptor carries everything the LP machinery needs from the space:
 * the set T of attainable inner products, the measure nu on [-1,1] that
 * orthogonalizes the zonal polynomials Q_i, multiplicities r_i, moments and
 * the antipodality flag. Descriptors are immutable after construction.
 *
 * For the infinite families nu is a Jacobi weight. It is carried here as a
 * Gauss-Jacobi discretization that integrates polynomials of degree below
 * 2 * kGaussPoints exactly; finite families carry nu exactly.
 */

#include "ulbkit/error.hpp"
#include "ulbkit/recurrence.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace ulbkit {

enum class Family { Sphere, Hamming, Johnson, Projective };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::Sphere: return "sphere";
        case Family::Hamming: return "hamming";
        case Family::Johnson: return "johnson";
        case Family::Projective: return "projective";
    }
    return "?";
}

/// Family parameters: n for every family, q for Hamming, w for Johnson,
/// m in {1,2,4} (real dimension of the field) for projective spaces.
struct SpaceParams {
    int n = 0;
    int q = 0;
    int w = 0;
    int m = 0;
};

/// Image of the substitution: the whole interval, or t_l = 1 - 2l/N.
struct TValueSet {
    enum class Kind { Interval, FiniteGrid };
    Kind kind = Kind::Interval;
    std::vector<double> values;  // descending from t_0 = 1 (FiniteGrid only)

    bool is_finite() const { return kind == Kind::FiniteGrid; }
};

inline constexpr int kUnboundedDegree = std::numeric_limits<int>::max();
inline constexpr int kGaussPoints = 48;

class SpaceDescriptor {
public:
    Family family() const { return family_; }
    const SpaceParams& params() const { return params_; }
    int n() const { return params_.n; }
    double diameter() const { return diameter_; }
    bool antipodal() const { return antipodal_; }
    bool finite() const { return family_ == Family::Hamming || family_ == Family::Johnson; }
    int max_degree() const { return max_degree_; }
    const TValueSet& tvalues() const { return tvalues_; }

    /// nu itself (finite families) or its Gauss-Jacobi discretization.
    const DiscreteMeasure& measure() const { return measure_; }

    /// Jacobi exponents (alpha, beta) of nu for Sphere/Projective.
    double jacobi_alpha() const { return jacobi_alpha_; }
    double jacobi_beta() const { return jacobi_beta_; }

    std::string name() const {
        std::string s = family_name(family_);
        s += "(n=" + std::to_string(params_.n);
        if (family_ == Family::Hamming) s += ",q=" + std::to_string(params_.q);
        if (family_ == Family::Johnson) s += ",w=" + std::to_string(params_.w);
        if (family_ == Family::Projective) s += ",m=" + std::to_string(params_.m);
        return s + ")";
    }

    friend SpaceDescriptor make_space(Family family, SpaceParams params);

private:
    SpaceDescriptor() = default;

    Family family_ = Family::Sphere;
    SpaceParams params_;
    double diameter_ = 0.0;
    bool antipodal_ = false;
    int max_degree_ = 0;
    TValueSet tvalues_;
    DiscreteMeasure measure_;
    double jacobi_alpha_ = 0.0;
    double jacobi_beta_ = 0.0;
};

namespace detail {

/// Exact binomial coefficient; throws on 64-bit overflow.
inline std::uint64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
        if (r > std::numeric_limits<std::uint64_t>::max()) throw ParameterError("binomial coefficient overflows 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

inline double binomial_real(double n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline std::vector<double> grid_values(int steps) {
    std::vector<double> v(static_cast<std::size_t>(steps) + 1);
    for (int l = 0; l <= steps; ++l) v[static_cast<std::size_t>(l)] = 1.0 - 2.0 * l / steps;
    return v;
}

}  // namespace detail

inline SpaceDescriptor make_space(Family family, SpaceParams p) {
    SpaceDescriptor s;
    s.family_ = family;
    s.params_ = p;
    switch (family) {
        case Family::Sphere: {
            if (p.n < 2) throw ParameterError("sphere: n must be >= 2");
            s.params_ = {p.n, 0, 0, 0};
            s.diameter_ = 2.0;
            s.antipodal_ = true;
            s.max_degree_ = kUnboundedDegree;
            s.jacobi_alpha_ = s.jacobi_beta_ = (p.n - 3) / 2.0;
            break;
        }
        case Family::Projective: {
            if (p.n < 2) throw ParameterError("projective: n must be >= 2");
            if (p.m != 1 && p.m != 2 && p.m != 4) throw ParameterError("projective: field dimension m must be 1, 2 or 4");
            s.params_ = {p.n, 0, 0, p.m};
            s.diameter_ = 1.0;
            s.antipodal_ = false;
            s.max_degree_ = kUnboundedDegree;
            s.jacobi_alpha_ = p.m * (p.n - 1) / 2.0 - 1.0;
            s.jacobi_beta_ = p.m / 2.0 - 1.0;
            break;
        }
        case Family::Hamming: {
            if (p.n < 2 || p.q < 2) throw ParameterError("hamming: requires n >= 2 and q >= 2");
            if (p.n > 1000) throw ParameterError("hamming: n too large");
            s.params_ = {p.n, p.q, 0, 0};
            s.diameter_ = p.n;
            s.antipodal_ = p.q == 2;
            s.max_degree_ = p.n;
            s.tvalues_ = {TValueSet::Kind::FiniteGrid, detail::grid_values(p.n)};
            // nu puts mass (q-1)^l C(n,l) / q^n on t_l (logs keep large n finite).
            for (int l = 0; l <= p.n; ++l) {
                double logm = l * std::log(p.q - 1.0) + std::lgamma(p.n + 1.0) - std::lgamma(l + 1.0) -
                              std::lgamma(p.n - l + 1.0) - p.n * std::log(static_cast<double>(p.q));
                s.measure_.nodes.push_back(s.tvalues_.values[static_cast<std::size_t>(l)]);
                s.measure_.masses.push_back(std::exp(logm));
            }
            break;
        }
        case Family::Johnson: {
            if (p.n < 2 || p.w < 1 || p.w > p.n / 2) throw ParameterError("johnson: requires n >= 2 and 1 <= w <= floor(n/2)");
            s.params_ = {p.n, 0, p.w, 0};
            s.diameter_ = p.w;
            s.antipodal_ = p.n == 2 * p.w;
            s.max_degree_ = p.w;
            s.tvalues_ = {TValueSet::Kind::FiniteGrid, detail::grid_values(p.w)};
            // nu puts mass C(w,l) C(n-w,l) / C(n,w) on t_l.
            for (int l = 0; l <= p.w; ++l) {
                double logm = std::lgamma(p.w + 1.0) - std::lgamma(l + 1.0) - std::lgamma(p.w - l + 1.0) +
                              std::lgamma(p.n - p.w + 1.0) - std::lgamma(l + 1.0) - std::lgamma(p.n - p.w - l + 1.0) -
                              (std::lgamma(p.n + 1.0) - std::lgamma(p.w + 1.0) - std::lgamma(p.n - p.w + 1.0));
                s.measure_.nodes.push_back(s.tvalues_.values[static_cast<std::size_t>(l)]);
                s.measure_.masses.push_back(std::exp(logm));
            }
            break;
        }
    }
    if (!s.finite()) {
        s.tvalues_ = {TValueSet::Kind::Interval, {}};
        s.measure_ = gauss_rule(jacobi_recurrence(s.jacobi_alpha_, s.jacobi_beta_, kGaussPoints), kGaussPoints);
    }
    return s;
}

inline SpaceDescriptor sphere(int n) { return make_space(Family::Sphere, {n, 0, 0, 0}); }
inline SpaceDescriptor hamming(int n, int q = 2) { return make_space(Family::Hamming, {n, q, 0, 0}); }
inline SpaceDescriptor johnson(int n, int w) { return make_space(Family::Johnson, {n, 0, w, 0}); }
inline SpaceDescriptor projective(int n, int m) { return make_space(Family::Projective, {n, 0, 0, m}); }

inline void check_degree(const SpaceDescriptor& space, int i) {
    if (i < 0) throw ParameterError("degree must be nonnegative");
    if (i > space.max_degree())
        throw DegreeOverflow("degree " + std::to_string(i) + " exceeds the maximal degree " +
                             std::to_string(space.max_degree()) + " of " + space.name());
}

/**
 * Zonal polynomial Q_i(t), normalized by Q_i(1) = 1.
 *
 * Each family uses its own three-term recurrence: Gegenbauer on the sphere,
 * Krawtchouk and Hahn in the continuous variable z = N(1-t)/2 on the finite
 * spaces, Jacobi on projective spaces.
 */
inline double q_eval(const SpaceDescriptor& space, int i, double t) {
    check_degree(space, i);
    if (i == 0) return 1.0;
    const SpaceParams& p = space.params();
    switch (space.family()) {
        case Family::Sphere: {
            const double n = p.n;
            double qm1 = 1.0, q = t;
            for (int k = 1; k < i; ++k) {
                double qn = ((2.0 * k + n - 2.0) * t * q - k * qm1) / (k + n - 2.0);
                qm1 = q;
                q = qn;
            }
            return q;
        }
        case Family::Hamming: {
            // (q-1)(n-k) Q_{k+1} = ((n-k)(q-1) + k - q z) Q_k - k Q_{k-1}
            const double n = p.n, qq = p.q, z = n * (1.0 - t) / 2.0;
            double qm1 = 0.0, q = 1.0;
            for (int k = 0; k < i; ++k) {
                double qn = (((n - k) * (qq - 1.0) + k - qq * z) * q - k * qm1) / ((qq - 1.0) * (n - k));
                qm1 = q;
                q = qn;
            }
            return q;
        }
        case Family::Johnson: {
            // Hahn Q_k(z; a, b, N) with a = -(n-w)-1, b = -w-1, N = w:
            // -z Q_k = A_k Q_{k+1} - (A_k + C_k) Q_k + C_k Q_{k-1}
            const double n = p.n, w = p.w, z = w * (1.0 - t) / 2.0;
            const double a = -(n - w) - 1.0, b = -w - 1.0;
            double qm1 = 0.0, q = 1.0;
            for (int k = 0; k < i; ++k) {
                const double s = 2.0 * k + a + b;
                double A = (k + a + b + 1.0) * (k + a + 1.0) * (w - k) / ((s + 1.0) * (s + 2.0));
                double C = k == 0 ? 0.0 : k * (k + a + b + w + 1.0) * (k + b) / (s * (s + 1.0));
                double qn = ((A + C - z) * q - C * qm1) / A;
                qm1 = q;
                q = qn;
            }
            return q;
        }
        case Family::Projective: {
            // Q_{k+1} = ((t - a_k) Q_k - b_k g_k Q_{k-1}) / ((1 - a_k) - b_k g_k), g_k = p_{k-1}(1) / p_k(1)
            Recurrence r = jacobi_recurrence(space.jacobi_alpha(), space.jacobi_beta(), i);
            double qm1 = 0.0, q = 1.0, g = 0.0;
            for (int k = 0; k < i; ++k) {
                const double al = r.alpha[static_cast<std::size_t>(k)];
                const double be = k == 0 ? 0.0 : r.beta[static_cast<std::size_t>(k)];
                const double den = (1.0 - al) - be * g;
                double qn = ((t - al) * q - be * g * qm1) / den;
                qm1 = q;
                q = qn;
                g = 1.0 / den;
            }
            return q;
        }
    }
    return 0.0;
}

/// Dimension r_i of the i-th eigenspace.
inline std::int64_t multiplicity(const SpaceDescriptor& space, int i) {
    check_degree(space, i);
    const SpaceParams& p = space.params();
    switch (space.family()) {
        case Family::Sphere:
            return static_cast<std::int64_t>(detail::binomial(p.n + i - 1, p.n - 1) -
                                             detail::binomial(p.n + i - 3, p.n - 1));
        case Family::Hamming: {
            std::uint64_t r = detail::binomial(p.n, i);
            for (int k = 0; k < i; ++k) r *= static_cast<std::uint64_t>(p.q - 1);
            return static_cast<std::int64_t>(r);
        }
        case Family::Johnson:
            return static_cast<std::int64_t>(detail::binomial(p.n, i) - (i == 0 ? 0 : detail::binomial(p.n, i - 1)));
        case Family::Projective: {
            // r_i = p_i(1)^2 / (beta_1 ... beta_i) for the monic Jacobi recurrence.
            if (i == 0) return 1;
            Recurrence r = jacobi_recurrence(space.jacobi_alpha(), space.jacobi_beta(), i + 1);
            double log_r = 0.0, g = 0.0;
            for (int k = 0; k < i; ++k) {
                const double be = k == 0 ? 0.0 : r.beta[static_cast<std::size_t>(k)];
                const double den = (1.0 - r.alpha[static_cast<std::size_t>(k)]) - be * g;
                log_r += 2.0 * std::log(den) - std::log(r.beta[static_cast<std::size_t>(k) + 1]);
                g = 1.0 / den;
            }
            return static_cast<std::int64_t>(std::llround(std::exp(log_r)));
        }
    }
    return 0;
}

/// b_m = integral of t^m d nu(t).
inline double moment(const SpaceDescriptor& space, int m) {
    if (m < 0) throw ParameterError("moment: m must be nonnegative");
    if (m == 0) return 1.0;
    switch (space.family()) {
        case Family::Sphere: {
            if (m % 2 == 1) return 0.0;
            // (2j-1)!! / (n (n+2) ... (n+2j-2))
            double b = 1.0;
            for (int i = 0; i < m / 2; ++i) b *= (2.0 * i + 1.0) / (space.n() + 2.0 * i);
            return b;
        }
        case Family::Hamming:
        case Family::Johnson:
            if (space.antipodal() && m % 2 == 1) return 0.0;
            return space.measure().integrate([m](double t) { return std::pow(t, m); });
        case Family::Projective: {
            if (m < 2 * kGaussPoints) return space.measure().integrate([m](double t) { return std::pow(t, m); });
            int pts = m / 2 + 1;
            DiscreteMeasure g = gauss_rule(jacobi_recurrence(space.jacobi_alpha(), space.jacobi_beta(), pts), pts);
            return g.integrate([m](double t) { return std::pow(t, m); });
        }
    }
    return 0.0;
}

/// q_1 = 1 - 1/Q_1(-1).
inline double q1(const SpaceDescriptor& space) { return 1.0 - 1.0 / q_eval(space, 1, -1.0); }

}  // namespace ulbkit
