#pragma once

// Reference formulas kept apart from the library: explicit binomial sums,
// the Legendre polynomials of the standard library, Gram-Schmidt on a grid.

#include <cmath>
#include <vector>

namespace oracle {

inline double binom(double n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Krawtchouk K_i(z) = sum_j (-1)^j (q-1)^{i-j} C(z,j) C(n-z,i-j), integer z.
inline double krawtchouk(int n, int q, int i, int z) {
    double s = 0.0;
    for (int j = 0; j <= i; ++j)
        s += (j % 2 ? -1.0 : 1.0) * std::pow(q - 1.0, i - j) * binom(z, j) * binom(n - z, i - j);
    return s;
}

/// Hamming Q_i at t = 1 - 2z/n.
inline double hamming_q(int n, int q, int i, int z) {
    return krawtchouk(n, q, i, z) / (std::pow(q - 1.0, i) * binom(n, i));
}

/// Johnson Q_i at t = 1 - 2z/w via the Eberlein eigenvalue E_z(i) / v_z.
inline double johnson_q(int n, int w, int i, int z) {
    double e = 0.0;
    for (int j = 0; j <= z; ++j)
        e += (j % 2 ? -1.0 : 1.0) * binom(i, j) * binom(w - i, z - j) * binom(n - w - i, z - j);
    return e / (binom(w, z) * binom(n - w, z));
}

/// r_i on S^{n-1}: (2i+n-2)/(i+n-2) C(i+n-2, i).
inline double sphere_multiplicity(int n, int i) {
    if (i == 0) return 1.0;
    return (2.0 * i + n - 2.0) / (i + n - 2.0) * binom(i + n - 2.0, i);
}

inline double gbinom(double a, int i) {
    return std::exp(std::lgamma(a + 1.0) - std::lgamma(i + 1.0) - std::lgamma(a - i + 1.0));
}

/// r_i on FP^{n-1} from the Jacobi norm formula; requires alpha + beta + 1 != 0.
inline double projective_multiplicity(int n, int m, int i) {
    const double a = m * (n - 1) / 2.0 - 1.0, b = m / 2.0 - 1.0;
    if (i == 0) return 1.0;
    return (2.0 * i + a + b + 1.0) * gbinom(i + a + b, i) * gbinom(i + a, i) / ((a + b + 1.0) * gbinom(i + b, i));
}

/**
 * Values at `eval_at` of the polynomials orthogonal for the point masses
 * (nodes, masses), built by Gram-Schmidt on monomials and normalized to 1 at
 * `norm_point`. Returns rows p_0..p_deg.
 */
inline std::vector<std::vector<double>> gram_schmidt(const std::vector<double>& nodes, const std::vector<double>& masses,
                                                     int deg, const std::vector<double>& eval_at, double norm_point) {
    // Represent each polynomial by monomial coefficients.
    std::vector<std::vector<double>> basis;
    auto eval = [](const std::vector<double>& c, double t) {
        double s = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) s = s * t + c[k];
        return s;
    };
    auto inner = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t l = 0; l < nodes.size(); ++l) s += masses[l] * eval(a, nodes[l]) * eval(b, nodes[l]);
        return s;
    };
    for (int d = 0; d <= deg; ++d) {
        std::vector<double> p(static_cast<std::size_t>(d) + 1, 0.0);
        p.back() = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : basis) {
                double c = inner(p, q) / inner(q, q);
                for (std::size_t k = 0; k < q.size(); ++k) p[k] -= c * q[k];
            }
        basis.push_back(p);
    }
    std::vector<std::vector<double>> out;
    for (auto& p : basis) {
        const double s = eval(p, norm_point);
        std::vector<double> row;
        for (double t : eval_at) row.push_back(eval(p, t) / s);
        out.push_back(row);
    }
    return out;
}

}  // namespace oracle
