#include "oracles.hpp"
#include "ulbkit/orthopoly.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ulbkit;

namespace {

std::vector<SpaceDescriptor> families() {
    return {sphere(3), sphere(5), hamming(12, 2), hamming(8, 3), johnson(14, 6), projective(4, 2), projective(3, 4)};
}

double weight(double t, int a, int b) { return std::pow(1.0 - t, a) * std::pow(1.0 + t, b); }

/// Integration rule exact for the products checked below.
DiscreteMeasure fine_rule(const SpaceDescriptor& s) {
    if (s.finite()) return s.measure();
    return gauss_rule(jacobi_recurrence(s.jacobi_alpha(), s.jacobi_beta(), 30), 30);
}

}  // namespace

TEST(AdjacentSystem, BaseSystemIsQ) {
    for (const SpaceDescriptor& s : families()) {
        const int top = std::min(6, s.max_degree() - 1);
        OrthoSystem sys = adjacent_system(s, 0, 0, top);
        for (int i = 0; i <= top; ++i) {
            for (double t : {-1.0, -0.4, 0.1, 0.7})
                EXPECT_NEAR(sys.eval(i, t), q_eval(s, i, t), 1e-10) << s.name() << " " << i;
            EXPECT_NEAR(sys.norm(i), static_cast<double>(multiplicity(s, i)), 1e-8 * multiplicity(s, i));
        }
        EXPECT_NEAR(sys.normalization(), 1.0, 1e-13);
    }
}

TEST(AdjacentSystem, OrthogonalityAndNormalization) {
    for (const SpaceDescriptor& s : families()) {
        DiscreteMeasure mu = fine_rule(s);
        for (int a = 0; a <= 1; ++a)
            for (int b = 0; b <= 1; ++b) {
                const int top = s.finite() ? 4 : 6;
                OrthoSystem sys = adjacent_system(s, a, b, top);
                const double c = sys.normalization();
                EXPECT_NEAR(c * mu.integrate([&](double t) { return weight(t, a, b); }), 1.0, 1e-12) << s.name();
                for (int i = 0; i < top; ++i)
                    for (int j = 0; j < top; ++j) {
                        double v = sys.norm(i) * c *
                                   mu.integrate([&](double t) { return sys.eval(i, t) * sys.eval(j, t) * weight(t, a, b); });
                        EXPECT_NEAR(v, i == j ? 1.0 : 0.0, 1e-10) << s.name() << " a=" << a << " b=" << b << " " << i << j;
                    }
                for (int i = 0; i <= top; ++i) EXPECT_NEAR(sys.eval(i, 1.0), 1.0, 1e-12);
            }
    }
}

TEST(AdjacentSystem, SphereJacobiExponentsShiftByOne) {
    // (1,1) on S^{n-1}: Jacobi with both exponents (n-3)/2 + 1, i.e. Gegenbauer of S^{n+1}.
    for (int n : {3, 4, 6}) {
        OrthoSystem sys = adjacent_system(sphere(n), 1, 1, 6);
        for (int i = 0; i <= 6; ++i)
            for (double t : {-0.8, 0.2, 0.6}) EXPECT_NEAR(sys.eval(i, t), q_eval(sphere(n + 2), i, t), 1e-12);
    }
}

TEST(AdjacentSystem, HammingMatchesGramSchmidt) {
    SpaceDescriptor s = hamming(8, 2);
    const DiscreteMeasure& nu = s.measure();
    std::vector<double> nodes, masses;
    for (std::size_t l = 0; l < nu.nodes.size(); ++l) {
        if (nu.nodes[l] >= 1.0) continue;
        nodes.push_back(nu.nodes[l]);
        masses.push_back(nu.masses[l] * (1.0 - nu.nodes[l]));
    }
    std::vector<double> at{-1.0, -0.3, 0.0, 0.55, 0.9};
    auto ref = oracle::gram_schmidt(nodes, masses, 6, at, 1.0);
    OrthoSystem sys = adjacent_system(s, 1, 0, 6);
    for (int i = 0; i <= 6; ++i)
        for (std::size_t l = 0; l < at.size(); ++l)
            EXPECT_NEAR(sys.eval(i, at[l]), ref[static_cast<std::size_t>(i)][l], 1e-9) << i << " " << at[l];
}

TEST(AdjacentSystem, SphereStieltjesOnGaussGridAgreesWithJacobi) {
    SpaceDescriptor s = sphere(5);
    DiscreteMeasure g = gauss_rule(jacobi_recurrence(s.jacobi_alpha(), s.jacobi_beta(), 20), 20);
    std::vector<double> masses;
    for (std::size_t l = 0; l < g.nodes.size(); ++l) masses.push_back(g.masses[l] * (1.0 - g.nodes[l]) * (1.0 + g.nodes[l]));
    std::vector<double> at{-0.7, 0.1, 0.5};
    auto ref = oracle::gram_schmidt(g.nodes, masses, 6, at, 1.0);
    OrthoSystem sys = adjacent_system(s, 1, 1, 6);
    for (int i = 0; i <= 6; ++i)
        for (std::size_t l = 0; l < at.size(); ++l) EXPECT_NEAR(sys.eval(i, at[l]), ref[static_cast<std::size_t>(i)][l], 1e-9);
}

TEST(AdjacentSystem, RejectsInvalidInput) {
    EXPECT_THROW(adjacent_system(sphere(3), 2, 0, 3), ParameterError);
    EXPECT_THROW(adjacent_system(sphere(3), 0, 0, -1), ParameterError);
    EXPECT_THROW(adjacent_system(hamming(4), 1, 1, 4), DegreeOverflow);
    OrthoSystem sys = adjacent_system(sphere(3), 0, 0, 3);
    EXPECT_THROW(sys.eval(5, 0.0), DegreeOverflow);
}

TEST(LargestZero, KnownValues) {
    for (int n : {3, 4, 8}) EXPECT_NEAR(adjacent_system(sphere(n), 0, 0, 1).largest_zero(1), 0.0, 1e-14);
    // Q_2 = (n t^2 - 1)/(n - 1): on S^3 the positive root is 1/2.
    EXPECT_NEAR(adjacent_system(sphere(4), 0, 0, 2).largest_zero(2), 0.5, 1e-14);
    for (int n : {3, 5, 9})
        EXPECT_NEAR(adjacent_system(sphere(n), 0, 0, 2).largest_zero(2), 1.0 / std::sqrt(n), 1e-14);
}

TEST(Zeros, RealSimpleAndInterlacing) {
    for (const SpaceDescriptor& s : families())
        for (int a = 0; a <= 1; ++a)
            for (int b = 0; b <= 1; ++b) {
                const int top = s.finite() ? 5 : 8;
                OrthoSystem sys = adjacent_system(s, a, b, top);
                for (int i = 1; i < top; ++i) {
                    auto z = sys.zeros(i), z1 = sys.zeros(i + 1);
                    ASSERT_EQ(z.size(), static_cast<std::size_t>(i));
                    for (double x : z) EXPECT_NEAR(sys.eval(i, x), 0.0, 1e-9);
                    for (int k = 0; k < i; ++k) {
                        EXPECT_LT(z1[static_cast<std::size_t>(k)], z[static_cast<std::size_t>(k)]) << s.name();
                        EXPECT_LT(z[static_cast<std::size_t>(k)], z1[static_cast<std::size_t>(k) + 1]) << s.name();
                    }
                }
            }
}

TEST(Kernel, KnownValues) {
    for (const SpaceDescriptor& s : families())
        for (int a = 0; a <= 1; ++a)
            for (int b = 0; b <= 1; ++b) EXPECT_NEAR(cd_kernel(s, a, b, 0, 0.3, -0.2), 1.0, 1e-15);
    for (int n : {3, 6}) EXPECT_NEAR(cd_kernel(sphere(n), 0, 0, 1, 1.0, 1.0), 1.0 + n, 1e-12);
}

TEST(Kernel, ZerosVanishAndInterlaceWithQ) {
    for (const SpaceDescriptor& s : {sphere(4), hamming(10), johnson(14, 6), projective(4, 2)}) {
        OrthoSystem sys = adjacent_system(s, 1, 0, 4);
        const double s0 = 0.5 * (sys.largest_zero(3) + sys.largest_zero(4));
        auto z = sys.kernel_zeros(3, s0);
        ASSERT_EQ(z.size(), 3u);
        for (double x : z) EXPECT_NEAR(sys.kernel(3, x, s0) / sys.kernel(3, s0, s0), 0.0, 1e-9) << s.name();
    }
}

TEST(Kernel, ChristoffelDarbouxIdentity) {
    // Q_i^{1,0}(t) = T_i(t,1) / T_i(1,1) with T the base-system kernel.
    for (const SpaceDescriptor& s : families()) {
        const int top = s.finite() ? std::min(8, s.max_degree() - 1) : 8;
        OrthoSystem base = adjacent_system(s, 0, 0, top);
        OrthoSystem sys = adjacent_system(s, 1, 0, top);
        for (int i = 0; i <= top; ++i)
            for (double t : {-1.0, -0.5, 0.0, 0.3, 0.8})
                EXPECT_NEAR(sys.eval(i, t), base.kernel(i, t, 1.0) / base.kernel(i, 1.0, 1.0), 1e-8)
                    << s.name() << " " << i << " " << t;
    }
}

TEST(ExpandInQ, SpecificPolynomials) {
    for (const SpaceDescriptor& s : families()) {
        QExpansion e = expand_in_q(s, q_polynomial(s, 3));
        for (int i = 0; i <= 3; ++i) EXPECT_NEAR(e.coefficient(i), i == 3 ? 1.0 : 0.0, 1e-10) << s.name();
    }
    for (int n : {3, 7}) {
        QExpansion e = expand_in_q(sphere(n), Polynomial({0.0, 1.0}));
        EXPECT_NEAR(e.coefficient(0), 0.0, 1e-14);
        EXPECT_NEAR(e.coefficient(1), 1.0, 1e-14);
        EXPECT_NEAR(expand_in_q(sphere(n), Polynomial({0.0, 0.0, 1.0})).coefficient(0), 1.0 / n, 1e-14);
    }
}

TEST(ExpandInQ, RoundTripOnRandomPolynomials) {
    for (const SpaceDescriptor& s : families()) {
        const int deg = std::min(6, s.max_degree());
        Polynomial f({0.3, -1.2, 0.7, 0.25, -0.6, 0.1, 0.05});
        f = Polynomial(std::vector<double>(f.coefficients().begin(), f.coefficients().begin() + deg + 1));
        QExpansion e = expand_in_q(s, f);
        for (double t : {-1.0, -0.2, 0.4, 1.0}) EXPECT_NEAR(e.evaluate(s, t), f(t), 1e-10) << s.name();
    }
}

TEST(ExpandInQ, HighDegreeOnSphereUsesLargerRule) {
    SpaceDescriptor s = sphere(3);
    // Past 30 the monomial coefficients of Q_i exceed 1e8 and cancellation dominates.
    Polynomial q30 = adjacent_system(s, 0, 0, 30).polynomial(30);
    QExpansion e = expand_in_q(s, q30);
    EXPECT_NEAR(e.coefficient(30), 1.0, 1e-6);
    EXPECT_NEAR(e.coefficient(0), 0.0, 1e-6);
}

TEST(Krein, ProductsOfQHaveNonnegativeExpansions) {
    for (const SpaceDescriptor& s : families()) {
        const int top = std::min(6, s.max_degree());
        for (int i = 0; i <= top; ++i)
            for (int j = i; j <= top; ++j) {
                QExpansion e = expand_in_q(s, q_polynomial(s, i) * q_polynomial(s, j));
                EXPECT_GE(e.min_coefficient(), -1e-9) << s.name() << " " << i << " " << j;
            }
    }
}

TEST(Krein, StrengthenedConditionHolds) {
    for (const SpaceDescriptor& s : families()) {
        const int top = s.finite() ? std::min(5, s.max_degree() - 2) : 5;
        OrthoSystem sys = adjacent_system(s, 1, 1, top);
        for (int i = 0; i <= top; ++i)
            for (int j = i; j <= top; ++j) {
                Polynomial f = Polynomial({1.0, 1.0}) * sys.polynomial(i) * sys.polynomial(j);
                EXPECT_GE(expand_in_q(s, f).min_coefficient(), -1e-9) << s.name() << " " << i << " " << j;
            }
    }
}
