#pragma once

/**
 * @file orthopoly.hpp
 * @brief Adjacent systems Q_i^{a,b}, a,b in {0,1}: polynomials orthogonal
 *        with respect to (1-t)^a (1+t)^b d nu(t), normalized by Q_i^{a,b}(1) = 1.
 *
 *   r_i^{a,b} c^{a,b} \int Q_i^{a,b} Q_j^{a,b} (1-t)^a (1+t)^b d nu = delta_ij,
 *   c^{a,b} \int (1-t)^a (1+t)^b d nu = 1.
 *
 * With the monic recurrence of the probability-normalized weight,
 * r_i^{a,b} = p_i(1)^2 / (beta_1 ... beta_i).
 */

#include "ulbkit/pmspace.hpp"
#include "ulbkit/polynomial.hpp"
#include "ulbkit/recurrence.hpp"
#include "ulbkit/tridiagonal.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace ulbkit {

class OrthoSystem {
public:
    int a() const { return a_; }
    int b() const { return b_; }
    /// Largest i for which Q_i^{a,b} is available.
    int max_degree() const { return static_cast<int>(ratio_.size()); }
    /// Largest i for which r_i^{a,b} is available.
    int max_norm_degree() const { return static_cast<int>(norms_.size()) - 1; }
    double normalization() const { return c_; }
    const Recurrence& recurrence() const { return rec_; }

    double eval(int i, double t) const {
        check(i, max_degree());
        double qm1 = 0.0, q = 1.0;
        for (int k = 0; k < i; ++k) {
            const std::size_t uk = static_cast<std::size_t>(k);
            const double be = k == 0 ? 0.0 : rec_.beta[uk];
            const double g = k == 0 ? 0.0 : 1.0 / ratio_[uk - 1];
            double qn = ((t - rec_.alpha[uk]) * q - be * g * qm1) / ratio_[uk];
            qm1 = q;
            q = qn;
        }
        return q;
    }

    double norm(int i) const {
        check(i, max_norm_degree());
        return norms_[static_cast<std::size_t>(i)];
    }

    /// Zeros of Q_i^{a,b}, ascending.
    std::vector<double> zeros(int i) const {
        if (i < 1) throw ParameterError("zeros: degree must be >= 1");
        check(i, max_degree());
        return recurrence_zeros(rec_, i);
    }

    /// t_i^{a,b}.
    double largest_zero(int i) const { return zeros(i).back(); }

    /// T_j^{a,b}(u,v) = sum_{i<=j} r_i^{a,b} Q_i^{a,b}(u) Q_i^{a,b}(v).
    double kernel(int j, double u, double v) const {
        check(j, max_norm_degree());
        double s = 0.0;
        for (int i = 0; i <= j; ++i) s += norms_[static_cast<std::size_t>(i)] * eval(i, u) * eval(i, v);
        return s;
    }

    /**
     * Zeros of t -> T_j^{a,b}(t, s), ascending. By Christoffel-Darboux they
     * are the eigenvalues of the (j+1)-Jacobi matrix whose last diagonal entry
     * is replaced by s - beta_j p_{j-1}(s)/p_j(s), with the eigenvalue s removed.
     */
    std::vector<double> kernel_zeros(int j, double s) const {
        check(j, max_degree() - 1);
        if (j == 0) return {};
        std::vector<double> diag(rec_.alpha.begin(), rec_.alpha.begin() + j + 1);
        std::vector<double> off(rec_.beta.begin(), rec_.beta.begin() + j + 1);
        double pm1 = 0.0, p = 1.0;
        for (int k = 0; k < j; ++k) {
            const std::size_t uk = static_cast<std::size_t>(k);
            double pn = (s - rec_.alpha[uk]) * p - (k == 0 ? 0.0 : rec_.beta[uk]) * pm1;
            pm1 = p;
            p = pn;
        }
        if (p == 0.0) throw NumericalError("kernel_zeros: s is a zero of p_j");
        diag.back() = s - rec_.beta[static_cast<std::size_t>(j)] * pm1 / p;
        std::vector<double> eig = tridiagonal_eigenvalues(diag, off);
        std::size_t drop = 0;
        for (std::size_t k = 1; k < eig.size(); ++k)
            if (std::abs(eig[k] - s) < std::abs(eig[drop] - s)) drop = k;
        eig.erase(eig.begin() + static_cast<std::ptrdiff_t>(drop));
        return eig;
    }

    /// Q_i^{a,b} in the monomial basis.
    Polynomial polynomial(int i) const {
        check(i, max_degree());
        Polynomial qm1, q = Polynomial::constant(1.0);
        for (int k = 0; k < i; ++k) {
            const std::size_t uk = static_cast<std::size_t>(k);
            const double be = k == 0 ? 0.0 : rec_.beta[uk];
            const double g = k == 0 ? 0.0 : 1.0 / ratio_[uk - 1];
            Polynomial qn = (1.0 / ratio_[uk]) * (Polynomial({-rec_.alpha[uk], 1.0}) * q - (be * g) * qm1);
            qm1 = q;
            q = qn;
        }
        return q;
    }

    friend OrthoSystem adjacent_system(const SpaceDescriptor& space, int a, int b, int max_deg);

private:
    void check(int i, int limit) const {
        if (i < 0) throw ParameterError("degree must be nonnegative");
        if (i > limit)
            throw DegreeOverflow("degree " + std::to_string(i) + " exceeds the available degree " +
                                 std::to_string(limit) + " of the adjacent system (" + std::to_string(a_) + "," +
                                 std::to_string(b_) + ")");
    }

    int a_ = 0, b_ = 0;
    double c_ = 1.0;
    Recurrence rec_;             // monic, beta_0 = 1 / c
    std::vector<double> ratio_;  // p_{k+1}(1) / p_k(1)
    std::vector<double> norms_;  // r_0 .. r_D
};

/**
 * Builds Q_0^{a,b} .. Q_{max_deg}^{a,b} (and p_{max_deg+1} for zeros). On
 * finite spaces the weighted measure has |T| - a - b support points, which
 * caps the available degrees.
 */
inline OrthoSystem adjacent_system(const SpaceDescriptor& space, int a, int b, int max_deg) {
    if ((a != 0 && a != 1) || (b != 0 && b != 1)) throw ParameterError("adjacent_system: a, b must be 0 or 1");
    if (max_deg < 0) throw ParameterError("adjacent_system: max_deg must be nonnegative");
    OrthoSystem sys;
    int qcap = max_deg + 1;
    sys.a_ = a;
    sys.b_ = b;
    if (space.finite()) {
        DiscreteMeasure mu;
        const DiscreteMeasure& nu = space.measure();
        for (std::size_t l = 0; l < nu.nodes.size(); ++l) {
            const double t = nu.nodes[l];
            const double w = std::pow(1.0 - t, a) * std::pow(1.0 + t, b);
            if (w <= 0.0) continue;
            mu.nodes.push_back(t);
            mu.masses.push_back(nu.masses[l] * w);
        }
        const int support = static_cast<int>(mu.nodes.size());
        if (max_deg > support)
            throw DegreeOverflow("adjacent_system: degree " + std::to_string(max_deg) + " exceeds the support size " +
                                 std::to_string(support) + " of the weighted measure on " + space.name());
        sys.rec_ = stieltjes(mu, std::min(max_deg + 1, support));
        const double mass = sys.rec_.beta[0];
        sys.c_ = 1.0 / mass;
        sys.rec_.beta[0] = 1.0;
        // p_support vanishes on the support; it has no normalization when 1 is a support point.
        if (a == 0) qcap = support - 1;
    } else {
        sys.rec_ = jacobi_recurrence(space.jacobi_alpha() + a, space.jacobi_beta() + b, max_deg + 1);
        double integral = 1.0;
        if (a == 1 && b == 0) integral = 1.0 - moment(space, 1);
        if (a == 0 && b == 1) integral = 1.0 + moment(space, 1);
        if (a == 1 && b == 1) integral = 1.0 - moment(space, 2);
        sys.c_ = 1.0 / integral;
    }
    const int len = sys.rec_.size();
    double g = 0.0;  // p_{k-1}(1) / p_k(1)
    double log_r = 0.0;
    sys.norms_.push_back(1.0);
    for (int k = 0; k < len; ++k) {
        const std::size_t uk = static_cast<std::size_t>(k);
        const double be = k == 0 ? 0.0 : sys.rec_.beta[uk];
        const double den = (1.0 - sys.rec_.alpha[uk]) - be * g;
        if (k >= qcap) break;
        sys.ratio_.push_back(den);
        g = 1.0 / den;
        if (k + 1 < len) {
            log_r += 2.0 * std::log(std::abs(den)) - std::log(sys.rec_.beta[uk + 1]);
            sys.norms_.push_back(std::exp(log_r));
        }
    }
    return sys;
}

/// Christoffel-Darboux kernel T_j^{a,b}(u,v).
inline double cd_kernel(const SpaceDescriptor& space, int a, int b, int j, double u, double v) {
    return adjacent_system(space, a, b, j).kernel(j, u, v);
}

/// Q_i of the base system in the monomial basis.
inline Polynomial q_polynomial(const SpaceDescriptor& space, int i) {
    check_degree(space, i);
    return adjacent_system(space, 0, 0, i).polynomial(i);
}

/// f = sum_i coeffs[i] Q_i.
struct QExpansion {
    std::vector<double> coeffs;

    double coefficient(int i) const {
        return i >= 0 && i < static_cast<int>(coeffs.size()) ? coeffs[static_cast<std::size_t>(i)] : 0.0;
    }
    /// Smallest coefficient over indices >= from (+inf when there are none).
    double min_coefficient(int from = 0) const {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t i = static_cast<std::size_t>(std::max(from, 0)); i < coeffs.size(); ++i)
            m = std::min(m, coeffs[i]);
        return m;
    }
    double evaluate(const SpaceDescriptor& space, double t) const {
        double s = 0.0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) s += coeffs[i] * q_eval(space, static_cast<int>(i), t);
        return s;
    }
};

/**
 * f_i = r_i \int f Q_i d nu.
 *
 * Finite spaces integrate over T exactly, so a polynomial of degree above
 * max_degree is expanded after reduction modulo prod_{t in T}(t - t_l), which
 * is all the LP machinery observes of it.
 */
inline QExpansion expand_in_q(const SpaceDescriptor& space, const Polynomial& f) {
    const int deg = f.degree();
    const int top = std::min(deg, space.max_degree());
    DiscreteMeasure rule;
    if (space.finite() || deg + 1 <= kGaussPoints) {
        rule = space.measure();
    } else {
        rule = gauss_rule(jacobi_recurrence(space.jacobi_alpha(), space.jacobi_beta(), deg + 1), deg + 1);
    }
    std::vector<double> fv(rule.nodes.size());
    for (std::size_t l = 0; l < rule.nodes.size(); ++l) fv[l] = f(rule.nodes[l]);
    QExpansion e;
    e.coeffs.resize(static_cast<std::size_t>(top) + 1);
    for (int i = 0; i <= top; ++i) {
        double s = 0.0;
        for (std::size_t l = 0; l < rule.nodes.size(); ++l) s += rule.masses[l] * fv[l] * q_eval(space, i, rule.nodes[l]);
        e.coeffs[static_cast<std::size_t>(i)] = static_cast<double>(multiplicity(space, i)) * s;
    }
    return e;
}

}  // namespace ulbkit
