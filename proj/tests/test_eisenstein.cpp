#include <gtest/gtest.h>

#include <random>
#include <set>
#include <stdexcept>

#include "cubesum/eisenstein.hpp"

using namespace cubesum;

namespace {

EisensteinInt random_element(std::mt19937_64& rng, i64 span) {
    std::uniform_int_distribution<i64> dist(-span, span);
    return {dist(rng), dist(rng)};
}

}  // namespace

TEST(Eisenstein, MulDefiningRelation) {
    // omega * omega = -1 + omega
    EXPECT_EQ(EisensteinInt(0, 1) * EisensteinInt(0, 1), EisensteinInt(-1, 1));
}

TEST(Eisenstein, MulHandExpansion) {
    EXPECT_EQ(EisensteinInt(1, 2) * EisensteinInt(3, -2), EisensteinInt(7, 0));
}

TEST(Eisenstein, MulIdentityElement) {
    EXPECT_EQ(EisensteinInt(5, -3) * EisensteinInt(1, 0), EisensteinInt(5, -3));
}

TEST(Eisenstein, ConjFormula) {
    EXPECT_EQ(EisensteinInt(1, 2).conj(), EisensteinInt(3, -2));
    EXPECT_EQ(EisensteinInt(42, 0).conj(), EisensteinInt(42, 0));
    EXPECT_EQ(EisensteinInt(0, 1).conj(), EisensteinInt(1, -1));
}

TEST(Eisenstein, NormExamples) {
    EXPECT_EQ(EisensteinInt(0, 0).norm(), 0u);
    EXPECT_EQ(EisensteinInt(1, 2).norm(), 7u);
    EXPECT_EQ(EisensteinInt(18, 1).norm(), 343u);
}

TEST(Eisenstein, UnitsAreTheSixExpected) {
    const std::set<std::pair<i64, i64>> expected = {{1, 0},  {-1, 0}, {0, 1},
                                                    {0, -1}, {-1, 1}, {1, -1}};
    std::set<std::pair<i64, i64>> got;
    for (const auto& u : units()) {
        EXPECT_EQ(u.norm(), 1u);
        got.insert({u.re(), u.om()});
    }
    EXPECT_EQ(got, expected);
}

TEST(Eisenstein, UnitsClosedUnderMulAndConj) {
    std::set<std::pair<i64, i64>> unit_set;
    for (const auto& u : units()) unit_set.insert({u.re(), u.om()});
    for (const auto& u : units()) {
        const auto c = u.conj();
        EXPECT_TRUE(unit_set.count({c.re(), c.om()}));
        for (const auto& v : units()) {
            const auto w = u * v;
            EXPECT_TRUE(unit_set.count({w.re(), w.om()}));
        }
    }
}

TEST(Eisenstein, OrbitMatchesExplicitMaps) {
    // (a, b) -> (-b, a+b) is multiplication by omega
    const auto orb = orbit(EisensteinInt(18, 1));
    bool found = false;
    for (const auto& w : orb) found = found || w == EisensteinInt(-1, 19);
    EXPECT_TRUE(found);

    const auto small = orbit(EisensteinInt(1, 1));
    const std::set<std::pair<i64, i64>> expected = {{1, 1},  {-1, -1}, {-1, 2},
                                                    {1, -2}, {-2, 1},  {2, -1}};
    std::set<std::pair<i64, i64>> got;
    for (const auto& w : small) got.insert({w.re(), w.om()});
    EXPECT_EQ(got, expected);
}

TEST(Eisenstein, OrbitMembersShareNorm) {
    const EisensteinInt z(37, -11);
    for (const auto& w : orbit(z)) EXPECT_EQ(w.norm(), z.norm());
}

TEST(Eisenstein, OrbitRejectsZero) {
    EXPECT_THROW(orbit(EisensteinInt(0, 0)), std::domain_error);
}

TEST(Eisenstein, PositiveRepresentativeExamples) {
    const auto already = positive_representative(EisensteinInt(7, 14));
    EXPECT_EQ(already.a, 7);
    EXPECT_EQ(already.b, 14);

    const auto negated = positive_representative(EisensteinInt(-18, -1));
    EXPECT_EQ(negated.a, 18);
    EXPECT_EQ(negated.b, 1);

    // (-1, 19) = omega * (18, 1)
    const auto rotated = positive_representative(EisensteinInt(-1, 19));
    EXPECT_EQ(rotated.a, 18);
    EXPECT_EQ(rotated.b, 1);
}

TEST(Eisenstein, PositiveRepresentativeRejectsSquareNorm) {
    EXPECT_THROW(positive_representative(EisensteinInt(2, 0)), std::domain_error);  // norm 4
    EXPECT_THROW(positive_representative(EisensteinInt(0, 0)), std::domain_error);  // norm 0
}

TEST(Eisenstein, CoefficientRangeIsEnforced) {
    const i64 limit = EisensteinInt::kCoeffLimit;
    EXPECT_NO_THROW(EisensteinInt(limit, -limit));
    EXPECT_THROW(EisensteinInt(limit + 1, 0), std::overflow_error);
    EXPECT_THROW(EisensteinInt(0, -limit - 1), std::overflow_error);
    // product and conjugate results are range-checked too
    EXPECT_THROW(EisensteinInt(limit, 0) * EisensteinInt(limit, 0), std::overflow_error);
    EXPECT_THROW(EisensteinInt(limit, limit).conj(), std::overflow_error);
}

// spans chosen so products stay inside the coefficient limit
TEST(EisensteinProperties, NormIsMultiplicative) {
    std::mt19937_64 rng(20240517);
    for (int i = 0; i < 500; ++i) {
        const auto z = random_element(rng, 25'000);
        const auto w = random_element(rng, 25'000);
        EXPECT_EQ((z * w).norm(), z.norm() * w.norm());
    }
}

TEST(EisensteinProperties, ConjugateNormIdentity) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        const auto z = random_element(rng, 25'000);
        const auto zzbar = z * z.conj();
        EXPECT_EQ(zzbar, EisensteinInt(i64(z.norm()), 0));
    }
}

TEST(EisensteinProperties, ConjIsInvolutiveAndMultiplicative) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 500; ++i) {
        const auto z = random_element(rng, 25'000);
        const auto w = random_element(rng, 25'000);
        EXPECT_EQ(z.conj().conj(), z);
        EXPECT_EQ((z * w).conj(), z.conj() * w.conj());
    }
}

TEST(EisensteinProperties, OrbitHasSixDistinctMembers) {
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 300; ++i) {
        auto z = random_element(rng, 100'000);
        if (z.is_zero()) z = EisensteinInt(1, 0);
        std::set<std::pair<i64, i64>> members;
        for (const auto& w : orbit(z)) members.insert({w.re(), w.om()});
        EXPECT_EQ(members.size(), 6u);
    }
}

TEST(EisensteinProperties, ExactlyOnePositivePerOrbitForNonSquareNorm) {
    std::mt19937_64 rng(31337);
    int tested = 0;
    while (tested < 300) {
        const auto z = random_element(rng, 100'000);
        if (z.is_zero() || is_perfect_square(z.norm())) continue;
        ++tested;
        int positives = 0;
        for (const auto& w : orbit(z))
            if (w.re() > 0 && w.om() > 0) ++positives;
        ASSERT_EQ(positives, 1);
        const auto rep = positive_representative(z);
        EXPECT_GT(rep.a, 0);
        EXPECT_GT(rep.b, 0);
        EXPECT_EQ(rep.norm, z.norm());
    }
}
