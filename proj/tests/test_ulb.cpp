#include "ulbkit/oracle.hpp"
#include "ulbkit/ulb.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace ulbkit;

TEST(Ulb, Tetrahedron) {
    UlbReport r = ulb(sphere(3), 4, riesz(1.0));
    EXPECT_NEAR(r.value_sum, 12.0 * std::sqrt(3.0 / 8.0), 1e-9);
    EXPECT_NEAR(r.value_mean, 3.0 * std::sqrt(3.0 / 8.0), 1e-9);
    EXPECT_NEAR(r.certificate_value_sum, r.value_sum, 1e-9);
    EXPECT_TRUE(r.checks.ok());
    EXPECT_NEAR(energy(sphere(3), named_config(sphere(3), "simplex"), riesz(1.0)), r.value_sum, 1e-9);
}

TEST(Ulb, CrossPolytopeClosedForm) {
    for (int n : {3, 5, 8})
        for (const Potential& h : {riesz(1.0), gaussian(1.0), riesz(3.0)}) {
            UlbReport r = ulb(sphere(n), 2 * n, h);
            double expect = 2.0 * n * h(-1.0) + 4.0 * n * (n - 1.0) * h(0.0);
            EXPECT_NEAR(r.value_sum, expect, 1e-9 * expect) << n << " " << h.name();
        }
}

TEST(Ulb, MeanConventionDividesByM) {
    UlbReport r = ulb(hamming(8), 20, gaussian(2.0), EnergyConvention::Mean);
    EXPECT_NEAR(r.value(), r.value_sum / 20.0, 1e-12);
    EXPECT_EQ(parse_convention("mean"), EnergyConvention::Mean);
    EXPECT_THROW(parse_convention("avg"), ParameterError);
}

TEST(Ulb, CertificateMatchesQuadratureValueAcrossFamilies) {
    for (const SpaceDescriptor& s : {sphere(4), hamming(9), johnson(12, 4), projective(4, 2), projective(3, 4)})
        for (int tau = 1; tau <= 5; ++tau) {
            const double M = std::floor(0.5 * (design_bound(s, tau) + design_bound(s, tau + 1)));
            for (const Potential& h : {riesz(1.0), gaussian(1.0)}) {
                UlbReport r = ulb(s, M, h);
                EXPECT_NEAR(r.certificate_value_sum, r.value_sum, 1e-8 * std::abs(r.value_sum)) << s.name() << " " << tau;
                EXPECT_TRUE(r.checks.below_h);
                EXPECT_TRUE(r.checks.f_geq);
                EXPECT_LE(r.certificate.degree(), tau);
            }
        }
}

TEST(Ulb, IncreasesWithCardinalityPerPair) {
    // ULB / M^2 is nondecreasing in M (the bound per pair grows as points crowd).
    double prev = 0.0;
    for (int M = 4; M <= 30; ++M) {
        double v = ulb(sphere(3), M, riesz(1.0)).value_sum / (M * static_cast<double>(M));
        EXPECT_GE(v, prev - 1e-12) << M;
        prev = v;
    }
}

TEST(Ulb, RejectsNonMonotonePotential) {
    EXPECT_THROW(ulb(sphere(3), 5, polynomial_potential(Polynomial({3.0, 1.0, -1.0}))), PreconditionError);
}

TEST(HermiteCertificate, PolynomialOfLowDegreeIsReproduced) {
    QuadratureRule r = quadrature_rule(sphere(4), 10);
    Potential h = series({0.5, 1.0, 0.25});
    ASSERT_GE(r.tau(), 2);
    Polynomial f = hermite_certificate(r, h);
    for (double t : {-1.0, 0.0, 0.5}) EXPECT_NEAR(f(t), h(t), 1e-12);
}

TEST(VerifyCertificate, NegativeCases) {
    SpaceDescriptor s = sphere(3);
    UlbReport r = ulb(s, 6, gaussian(1.0));
    Polynomial up = r.certificate + Polynomial::constant(1.0);
    EXPECT_FALSE(verify_certificate(s, up, gaussian(1.0)).below_h);
    CertificateChecks c = verify_certificate(s, Polynomial({0.0, -1.0}), gaussian(1.0));
    EXPECT_FALSE(c.f_geq);
    EXPECT_NEAR(c.min_q_coefficient, -1.0, 1e-12);
}

TEST(TestFunctions, VanishUpToTau) {
    for (const SpaceDescriptor& s : {sphere(3), sphere(4), hamming(10), johnson(12, 4), projective(4, 2)})
        for (int tau = 1; tau <= std::min(5, s.max_degree() - 1); ++tau) {
            const double M = 0.5 * (design_bound(s, tau) + design_bound(s, tau + 1));
            TestFunctionReport r = test_functions(s, M, 0, tau);
            EXPECT_NEAR(r.values[0].second, 1.0, 1e-10);
            for (int j = 1; j <= tau; ++j) EXPECT_NEAR(r.values[static_cast<std::size_t>(j)].second, 0.0, 1e-8) << s.name();
        }
}

TEST(TestFunctions, SphereFourCardinality24) {
    TestFunctionReport r = test_functions(sphere(4), 24, 0, 10);
    for (auto [j, p] : r.values)
        if (j >= 1 && j <= r.level.tau) {
            EXPECT_NEAR(p, 0.0, 1e-8);
        }
    ASSERT_TRUE(r.first_negative_j);
    EXPECT_EQ(*r.first_negative_j, 8);
}

TEST(TestFunctions, NegativeOnSphereThreeWithFivePoints) {
    TestFunctionReport r = test_functions(sphere(3), 5, 0, 8);
    EXPECT_LT(r.values[5].second, -1e-6);
    EXPECT_THROW(test_functions(sphere(3), 5, 3, 2), ParameterError);
}

TEST(Improve, GainMatchesPrediction) {
    SpaceDescriptor s = sphere(3);
    const Potential h = riesz(1.0);
    UlbReport r = improve_with_qj(s, 5, h, 5);
    ASSERT_TRUE(r.improvement);
    const Improvement& imp = *r.improvement;
    EXPECT_GT(imp.eta, 0.0);
    EXPECT_LT(imp.p_j, 0.0);
    EXPECT_NEAR(r.value_sum - imp.base_value_sum, imp.predicted_gain, 1e-8);
    EXPECT_GT(r.value_sum, imp.base_value_sum);
    // The improved bound remains below the energy of a good 5-point code.
    EXPECT_LE(r.value_sum, minimize_sphere(3, 5, h, 4, 1).energy + 1e-8);
}

TEST(Improve, Preconditions) {
    EXPECT_THROW(improve_with_qj(sphere(3), 5, riesz(1.0), 2), PreconditionError);
    EXPECT_THROW(improve_with_qj(sphere(3), 4, riesz(1.0), 3), PreconditionError);
}

TEST(Improve, SmallEtaRecoversBase) {
    SpaceDescriptor s = sphere(3);
    UlbReport base = ulb(s, 5, gaussian(1.0));
    QuadratureRule rule = quadrature_rule(s, 5);
    const double eta = 1e-9;
    Polynomial qj = q_polynomial(s, 5);
    Potential ht("h - eta Q5", [eta, qj](double t, int o) { return std::exp(t) - eta * qj.derivative(o)(t); });
    Polynomial f = eta * qj + hermite_certificate(rule, ht);
    double v = 5.0 * (expand_in_q(s, f).coefficient(0) * 5.0 - f(1.0));
    EXPECT_NEAR(v, base.value_sum, 1e-6);
}

TEST(OddBranch, AgreesOnOddLevelAndIsWeakerOnEven) {
    UlbReport a = ulb(sphere(3), 4, riesz(1.0));
    UlbReport b = ulb_odd_branch(sphere(3), 4, riesz(1.0));
    EXPECT_NEAR(a.value_sum, b.value_sum, 1e-10);
    for (double M : {5.0, 5.5, 6.0}) {
        UlbReport even = ulb(sphere(3), M, riesz(1.0));
        UlbReport odd = ulb_odd_branch(sphere(3), M, riesz(1.0));
        EXPECT_TRUE(odd.checks.ok());
        EXPECT_LE(odd.value_sum, even.value_sum + 1e-9) << M;
    }
}
