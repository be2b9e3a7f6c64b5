#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "quadpair/errors.hpp"
#include "quadpair/forms.hpp"

using namespace quadpair;

namespace {

std::array<std::int64_t, 6> minors_by_hand(const Coeffs4& a, const Coeffs4& b) {
    std::array<std::int64_t, 6> m{};
    int k = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) m[static_cast<std::size_t>(k++)] = a[i] * b[j] - a[j] * b[i];
    return m;
}

}  // namespace

TEST(Forms, CanonicalMinorsAlphaAndDiscriminant) {
    auto pair = FormPair::canonical();
    auto report = check_compatibility(pair);
    auto expected = minors_by_hand(pair.a(), pair.b());
    EXPECT_EQ(report.minors, expected);
    EXPECT_EQ(report.minors, (std::array<std::int64_t, 6>{-1, 4, 6, 5, 7, 2}));
    EXPECT_EQ(report.alpha, 30);
    ASSERT_TRUE(report.D.has_value());
    EXPECT_EQ(static_cast<std::int64_t>(*report.D), -1680);
    EXPECT_TRUE(report.is_compatible);
}

TEST(Forms, CanonicalBadPrimes) {
    auto pair = FormPair::canonical();
    EXPECT_EQ(pair.bad_primes(), (std::vector<std::int64_t>{2, 3, 5, 7}));
    for (std::int64_t p : {2, 3, 5, 7}) EXPECT_TRUE(pair.divides_2alphaD(p)) << p;
    for (std::int64_t p : {11, 13, 17, 19, 23}) EXPECT_FALSE(pair.divides_2alphaD(p)) << p;
}

TEST(Forms, IncompatiblePairsAreReported) {
    auto same = check_compatibility(FormPair({1, 2, 3, 4}, {1, 2, 3, 4}));
    EXPECT_FALSE(same.is_compatible);
    EXPECT_EQ(same.zero_minors.size(), 6u);
    auto square_alpha = check_compatibility(FormPair({1, 1, 1, 1}, {1, 2, 3, 4}));
    EXPECT_FALSE(square_alpha.is_compatible);
    EXPECT_TRUE(square_alpha.zero_minors.empty());
}

TEST(Forms, TildeCoefficientsAndIsotropicVector) {
    auto t = tilde(FormPair::canonical().psi1());
    EXPECT_EQ(static_cast<std::int64_t>(t.gamma), 30);
    std::array<std::int64_t, 4> coeffs{};
    for (std::size_t i = 0; i < 4; ++i) coeffs[i] = static_cast<std::int64_t>(t.coeffs[i]);
    EXPECT_EQ(coeffs, (std::array<std::int64_t, 4>{30, 15, -10, -6}));
    EXPECT_EQ(static_cast<std::int64_t>(t.eval({1, 2, 3, 0})), 0);
    EXPECT_EQ(static_cast<std::int64_t>(t.eval({1, 1, 1, 1})), 29);
    EXPECT_EQ(t.eval_mod({1, 1, 1, 1}, 11), 7);
    EXPECT_EQ(t.eval_mod({0, 0, 1, 0}, 11), 1);
}

TEST(Forms, EvaluationMatchesExpansion) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> d(-1000, 1000);
    auto pair = FormPair::canonical();
    for (int i = 0; i < 200; ++i) {
        Vec4 x{d(rng), d(rng), d(rng), d(rng)};
        std::int64_t p1 = x[0] * x[0] + 2 * x[1] * x[1] - 3 * x[2] * x[2] - 5 * x[3] * x[3];
        std::int64_t p2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
        EXPECT_EQ(static_cast<std::int64_t>(pair.psi1_at(x)), p1);
        EXPECT_EQ(static_cast<std::int64_t>(pair.psi2_at(x)), p2);
    }
}

TEST(Forms, GuardsOnCoefficientsAndArguments) {
    EXPECT_THROW(DiagonalForm({1, 0, 1, 1}), DomainError);
    EXPECT_THROW(DiagonalForm({std::int64_t{1} << 31, 1, 1, 1}), TooLarge);
    EXPECT_THROW(eval_form(DiagonalForm({1, 1, 1, 1}), {std::int64_t{1} << 31, 0, 0, 0}), TooLarge);
}

TEST(Forms, PencilReducesModP) {
    auto pencil_c = pencil(FormPair::canonical(), 4, 11);
    // b + 4a = (5, 9, -11, -19) = (5, 9, 0, 3) mod 11
    EXPECT_EQ(pencil_c.c, (std::array<std::int64_t, 4>{5, 9, 0, 3}));
    EXPECT_THROW(pencil(FormPair::canonical(), 1, 9), InvalidModulus);
}

TEST(Forms, PerfectSquaresAndIntegerRoot) {
    for (std::int64_t n = -5; n <= 20000; ++n) EXPECT_EQ(is_perfect_square(n), oracle::square(n)) << n;
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        unsigned __int128 n = (static_cast<unsigned __int128>(rng()) << 40) ^ rng();
        auto r = static_cast<unsigned __int128>(isqrt_u128(n));
        EXPECT_TRUE(r * r <= n && (r + 1) * (r + 1) > n);
    }
    i128 big = static_cast<i128>(3037000499LL) * 3037000499LL;
    EXPECT_TRUE(is_perfect_square(big));
    EXPECT_FALSE(is_perfect_square(big + 1));
}

TEST(Forms, CubeExtremesOfPsi1) {
    auto pair = FormPair::canonical();
    EXPECT_DOUBLE_EQ(pair.psi1_max_on_cube(), 3.0);
    EXPECT_DOUBLE_EQ(pair.psi1_min_on_cube(), -8.0);
}
