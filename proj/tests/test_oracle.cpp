#include "ulbkit/oracle.hpp"
#include "ulbkit/ulb.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace ulbkit;

TEST(Energy, ClosedForms) {
    SpaceDescriptor s = sphere(3);
    EXPECT_NEAR(energy(s, named_config(s, "simplex"), riesz(1.0)), 12.0 * std::sqrt(3.0 / 8.0), 1e-10);
    Code pair;
    pair.vectors = {{0.0, 0.0, 1.0}, {0.0, 0.0, -1.0}};
    for (const Potential& h : {riesz(1.0), gaussian(2.0)}) EXPECT_NEAR(energy(s, pair, h), 2.0 * h(-1.0), 1e-14);
    EXPECT_NEAR(energy(s, pair, gaussian(1.0), EnergyConvention::Mean), std::exp(-1.0), 1e-14);
    for (int n : {3, 6}) {
        SpaceDescriptor sn = sphere(n);
        double e = energy(sn, named_config(sn, "cross_polytope"), riesz(2.0));
        EXPECT_NEAR(e, 2.0 * n * riesz(2.0)(-1.0) + 4.0 * n * (n - 1.0) * riesz(2.0)(0.0), 1e-10);
        EXPECT_NEAR(energy(sn, named_config(sn, "simplex"), gaussian(1.0)), n * (n + 1.0) * std::exp(-1.0 / n), 1e-10);
    }
}

TEST(Energy, InvalidCodes) {
    SpaceDescriptor s = sphere(3);
    Code dup;
    dup.vectors = {{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
    EXPECT_THROW(energy(s, dup, riesz(1.0)), Error);
    Code off;
    off.vectors = {{1.0, 1.0, 0.0}, {1.0, 0.0, 0.0}};
    EXPECT_THROW(energy(s, off, riesz(1.0)), ParameterError);
    Code words;
    words.words = {{0, 1, 2}, {1, 1, 1}};
    EXPECT_THROW(energy(hamming(3, 2), words, gaussian(1.0)), ParameterError);
    Code heavy;
    heavy.words = {{1, 1, 0, 0}, {1, 1, 1, 0}};
    EXPECT_THROW(energy(johnson(4, 2), heavy, gaussian(1.0)), ParameterError);
}

TEST(Separation, NamedCodes) {
    for (int n : {3, 5}) {
        SpaceDescriptor s = sphere(n);
        Separation c = separation(s, named_config(s, "cross_polytope"));
        EXPECT_NEAR(c.s, 0.0, 1e-15);
        EXPECT_NEAR(c.ell, -1.0, 1e-15);
        Separation x = separation(s, named_config(s, "simplex"));
        EXPECT_NEAR(x.s, -1.0 / n, 1e-14);
        EXPECT_NEAR(x.ell, -1.0 / n, 1e-14);
    }
    EXPECT_EQ(separation(hamming(5), named_config(hamming(5), "repetition")).s, -1.0);
}

TEST(DesignStrength, ClassicalValues) {
    SpaceDescriptor s = sphere(3);
    EXPECT_EQ(design_strength(s, named_config(s, "cross_polytope"), 10), 3);
    EXPECT_EQ(design_strength(s, named_config(s, "icosahedron"), 10), 5);
    EXPECT_EQ(design_strength(s, named_config(s, "simplex"), 10), 2);
    EXPECT_EQ(design_strength(s, named_config(s, "cube"), 10), 3);
    EXPECT_EQ(design_strength(sphere(6), named_config(sphere(6), "simplex"), 10), 2);
    EXPECT_EQ(design_strength(hamming(8), named_config(hamming(8), "extended_hamming_8"), 8), 3);
    EXPECT_EQ(design_strength(hamming(6), named_config(hamming(6), "parity_check"), 6), 5);
    // Blocks of a 3-(8,4,1) design.
    EXPECT_EQ(design_strength(johnson(8, 4), named_config(johnson(8, 4), "steiner_3_4_8"), 4), 3);
    EXPECT_EQ(design_strength(johnson(7, 3), named_config(johnson(7, 3), "fano"), 3), 2);
}

TEST(NamedConfig, Icosahedron) {
    SpaceDescriptor s = sphere(3);
    Code c = named_config(s, "icosahedron");
    ASSERT_EQ(c.size(), 12u);
    const double a = 1.0 / std::sqrt(5.0);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            double t = inner_t(s, c, i, j);
            EXPECT_TRUE(std::abs(t - a) < 1e-12 || std::abs(t + a) < 1e-12 || std::abs(t + 1.0) < 1e-12) << t;
        }
}

TEST(NamedConfig, ExtendedHammingCode) {
    SpaceDescriptor s = hamming(8);
    Code c = named_config(s, "extended_hamming_8");
    ASSERT_EQ(c.size(), 16u);
    std::set<std::vector<int>> distinct(c.words.begin(), c.words.end());
    EXPECT_EQ(distinct.size(), 16u);
    int dmin = 8;
    for (std::size_t i = 0; i < c.words.size(); ++i)
        for (std::size_t j = i + 1; j < c.words.size(); ++j) {
            int d = 0;
            for (int k = 0; k < 8; ++k) d += c.words[i][static_cast<std::size_t>(k)] != c.words[j][static_cast<std::size_t>(k)];
            dmin = std::min(dmin, d);
        }
    EXPECT_EQ(dmin, 4);
}

TEST(NamedConfig, SimplexGram) {
    for (int n : {2, 4, 7}) {
        SpaceDescriptor s = sphere(n);
        Code c = named_config(s, "simplex");
        ASSERT_EQ(c.size(), static_cast<std::size_t>(n + 1));
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j) EXPECT_NEAR(inner_t(s, c, i, j), -1.0 / n, 1e-14);
    }
    EXPECT_THROW(named_config(sphere(4), "icosahedron"), ParameterError);
    EXPECT_FALSE(named_config_names(projective(3, 2)).empty());
}

TEST(NamedConfig, ProjectiveBasisIsOrthogonal) {
    for (int m : {1, 2, 4}) {
        SpaceDescriptor s = projective(3, m);
        Code c = named_config(s, "orthonormal_basis");
        EXPECT_NEAR(separation(s, c).s, -1.0, 1e-15);
    }
}

TEST(InnerT, ProjectiveIgnoresPhase) {
    // (1, 0) and (i, 0) span the same complex line; (1, i)/sqrt2 meets (1, 0) at |<x,y>|^2 = 1/2.
    SpaceDescriptor s = projective(2, 2);
    Code c;
    const double r = 1.0 / std::sqrt(2.0);
    c.vectors = {{1.0, 0.0, 0.0, 0.0}, {0.0, 0.0, r, r}, {r, 0.0, 0.0, r}};
    EXPECT_NEAR(inner_t(s, c, 0, 1), -1.0, 1e-15);
    EXPECT_NEAR(inner_t(s, c, 0, 2), 0.0, 1e-15);
    Code same;
    same.vectors = {{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}};
    EXPECT_NEAR(inner_t(s, same, 0, 1), 1.0, 1e-15);
}

TEST(InnerT, QuaternionicLine) {
    SpaceDescriptor s = projective(2, 4);
    Code c;
    // x = (1, 0), y = (q, 0) with a unit quaternion q: same line.
    const double h = 0.5;
    c.vectors = {{1, 0, 0, 0, 0, 0, 0, 0}, {h, h, h, h, 0, 0, 0, 0}};
    EXPECT_NEAR(inner_t(s, c, 0, 1), 1.0, 1e-15);
}

TEST(MinimizeSphere, KnownOptima) {
    const Potential h = riesz(1.0);
    MinimizeResult r4 = minimize_sphere(3, 4, h, 6, 3);
    EXPECT_NEAR(r4.energy, 12.0 * std::sqrt(3.0 / 8.0), 1e-5 * r4.energy);
    MinimizeResult r6 = minimize_sphere(3, 6, h, 6, 3);
    double octa = 6.0 * h(-1.0) + 24.0 * h(0.0);
    EXPECT_NEAR(r6.energy, octa, 1e-5 * octa);
    MinimizeResult r2 = minimize_sphere(3, 2, h, 2, 1);
    EXPECT_NEAR(r2.energy, 2.0 * h(-1.0), 1e-9);
    EXPECT_EQ(r4.restart_energies.size(), 6u);
}

TEST(MinimizeSphere, DeterministicAndAboveUlb) {
    const Potential h = gaussian(1.0);
    MinimizeResult a = minimize_sphere(4, 9, h, 4, 42);
    MinimizeResult b = minimize_sphere(4, 9, h, 4, 42);
    EXPECT_EQ(a.energy, b.energy);
    EXPECT_EQ(a.code.vectors, b.code.vectors);
    EXPECT_GE(a.energy, ulb(sphere(4), 9, h).value_sum - 1e-8);
    EXPECT_NEAR(energy(sphere(4), a.code, h), a.energy, 1e-9 * a.energy);
}

TEST(ExhaustiveHamming, SmallCases) {
    const Potential h = riesz(1.0);
    ExhaustiveResult r3 = exhaustive_hamming(3, 2, h);
    EXPECT_NEAR(r3.energy, 2.0 * h(-1.0), 1e-14);
    ExhaustiveResult r4 = exhaustive_hamming(4, 2, h);
    EXPECT_NEAR(r4.energy, 2.0 * h(-1.0), 1e-14);
    EXPECT_THROW(exhaustive_hamming(20, 12, h), ParameterError);
}

TEST(ExhaustiveHamming, ReductionMatchesFullEnumeration) {
    for (const Potential& h : {riesz(1.0), gaussian(1.0)})
        for (int M : {2, 3, 4, 5}) {
            ExhaustiveResult a = exhaustive_hamming(4, M, h, true);
            ExhaustiveResult b = exhaustive_hamming(4, M, h, false);
            EXPECT_NEAR(a.energy, b.energy, 1e-12) << M;
            EXPECT_LT(a.subsets, b.subsets);
            EXPECT_NEAR(energy(hamming(4), a.code, h), a.energy, 1e-12);
        }
}

TEST(ExhaustiveHamming, InvariantUnderRelabeling) {
    // Complementing a coordinate and permuting coordinates preserve the energy of the optimum.
    const Potential h = gaussian(1.5);
    ExhaustiveResult r = exhaustive_hamming(5, 4, h);
    Code c = r.code;
    for (auto& w : c.words) {
        w[0] ^= 1;
        std::swap(w[1], w[4]);
    }
    EXPECT_NEAR(energy(hamming(5), c, h), r.energy, 1e-12);
}
