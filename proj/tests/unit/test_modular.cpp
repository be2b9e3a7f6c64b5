#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracle.hpp"
#include "quadpair/errors.hpp"
#include "quadpair/modular.hpp"

using namespace quadpair;

TEST(Modular, PrimalityMatchesTrialDivision) {
    for (std::int64_t n = 0; n < 20000; ++n) EXPECT_EQ(is_prime(static_cast<std::uint64_t>(n)), oracle::prime(n)) << n;
    EXPECT_TRUE(is_prime(18446744073709551557ULL));
    EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(Modular, FactorizationRebuildsSquarefreeKernel) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        std::uint64_t n = rng() % 1'000'000'000ULL + 2;
        auto f = factorize(n);
        std::uint64_t rest = n;
        for (auto p : f) {
            EXPECT_TRUE(oracle::prime(static_cast<std::int64_t>(p)));
            while (rest % p == 0) rest /= p;
        }
        EXPECT_EQ(rest, 1u);
        EXPECT_TRUE(std::is_sorted(f.begin(), f.end()));
    }
}

TEST(Modular, LegendreMatchesEulerCriterion) {
    for (std::int64_t p : {3, 5, 7, 11, 13, 101, 1009}) {
        for (std::int64_t n = -2 * p; n <= 2 * p; ++n) EXPECT_EQ(legendre(n, p), oracle::legendre(n, p));
    }
    EXPECT_THROW(legendre(2, 9), InvalidModulus);
    EXPECT_THROW(legendre(2, 2), InvalidModulus);
}

TEST(Modular, JacobiIsMultiplicativeInTheModulus) {
    for (std::int64_t q : {1, 3, 15, 143, 221, 1155}) {
        SquarefreeModulus sq(q);
        for (std::int64_t n = -300; n <= 300; ++n) EXPECT_EQ(jacobi(n, sq), oracle::jacobi(n, q)) << n << " " << q;
    }
    EXPECT_THROW(SquarefreeModulus(45), InvalidModulus);
    EXPECT_THROW(jacobi(3, SquarefreeModulus(10)), InvalidModulus);
}

TEST(Modular, RamanujanSumAgainstDefinition) {
    for (std::int64_t q = 1; q <= 60; ++q) {
        for (std::int64_t n = -70; n <= 70; ++n) {
            std::complex<double> s = 0.0;
            for (std::int64_t a = 1; a <= q; ++a)
                if (std::gcd(a, q) == 1) s += oracle::e(static_cast<double>(a * n) / static_cast<double>(q));
            EXPECT_NEAR(static_cast<double>(ramanujan_sum(q, n)), s.real(), 1e-9) << q << " " << n;
            EXPECT_NEAR(std::abs(ramanujan_bruteforce(q, n) - s), 0.0, 1e-9);
        }
    }
}

TEST(Modular, MobiusAndTotientAgainstCounting) {
    for (std::int64_t n = 1; n <= 500; ++n) {
        std::int64_t phi = 0;
        for (std::int64_t a = 1; a <= n; ++a) phi += std::gcd(a, n) == 1;
        EXPECT_EQ(euler_phi(n), phi);
        // sum_{d | n} mu(d) = [n = 1]
        std::int64_t s = 0;
        for (std::int64_t d = 1; d <= n; ++d)
            if (n % d == 0) s += mobius(d);
        EXPECT_EQ(s, n == 1 ? 1 : 0);
    }
}

TEST(Modular, InverseAndCrt) {
    for (std::int64_t m : {7, 9, 22, 143}) {
        for (std::int64_t a = 1; a < m; ++a) {
            if (std::gcd(a, m) != 1) {
                EXPECT_THROW(mod_inverse(a, m), DomainError);
                continue;
            }
            EXPECT_EQ(oracle::mod(a * mod_inverse(a, m), m), 1);
        }
    }
    for (std::int64_t r1 = 0; r1 < 9; ++r1)
        for (std::int64_t r2 = 0; r2 < 11; ++r2) {
            auto r = crt_pair(r1, 9, r2, 11);
            EXPECT_EQ(r % 9, r1);
            EXPECT_EQ(r % 11, r2);
        }
    EXPECT_THROW(crt_pair(1, 6, 1, 9), DomainError);
}

TEST(Modular, GaussSumSquare) {
    // tau(p)^2 = (-1/p) p
    for (std::int64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 101}) {
        auto t = gauss_sum(p);
        double sign = p % 4 == 1 ? 1.0 : -1.0;
        EXPECT_NEAR(std::abs(t * t - std::complex<double>(sign * static_cast<double>(p), 0.0)), 0.0, 1e-9);
    }
}

TEST(Modular, QuadraticGaussSumClosedForm) {
    for (std::int64_t p : {3, 5, 7, 11}) {
        for (int r = 1; ipow(p, r) <= 1331; ++r) {
            for (std::int64_t m : {1, 2, 5}) {
                for (std::int64_t g : {1, 2, 3, -4}) {
                    if (oracle::mod(2 * m * g, p) == 0) {
                        EXPECT_THROW(quad_gauss_sum_closed(m, g, p, r), PreconditionError);
                        continue;
                    }
                    std::int64_t n = ipow(p, r);
                    std::complex<double> s = 0.0;
                    for (std::int64_t k = 0; k < n; ++k)
                        s += oracle::e(static_cast<double>(oracle::mod(m * g * k * k, n)) / static_cast<double>(n));
                    auto closed = quad_gauss_sum_closed(m, g, p, r);
                    EXPECT_NEAR(std::abs(closed - s), 0.0, 1e-9 * std::max(1.0, std::abs(s))) << p << " " << r;
                    EXPECT_NEAR(std::abs(quad_gauss_sum_brute(m, g, p, r) - s), 0.0, 1e-9 * std::max(1.0, std::abs(s)));
                }
            }
        }
    }
}

TEST(Modular, FourDimensionalSumFactorsOverCoordinates) {
    DiagonalForm phi({1, 2, 3, 1});
    for (std::int64_t p : {5, 7}) {
        for (int r : {1, 2}) {
            const std::int64_t n = ipow(p, r);
            for (const Vec4& w : {Vec4{0, 0, 0, 0}, Vec4{1, 0, 1, 1}, Vec4{3, 4, 5, 6}, Vec4{p, 0, 0, 1}}) {
                std::complex<double> prod = 1.0;
                for (int i = 0; i < 4; ++i) {
                    std::complex<double> s = 0.0;
                    for (std::int64_t k = 0; k < n; ++k)
                        s += oracle::e(static_cast<double>(oracle::mod(2 * phi[i] * k * k + w[static_cast<std::size_t>(i)] * k, n)) /
                                       static_cast<double>(n));
                    prod *= s;
                }
                auto closed = exp_sum_quad4(phi, 2, w, p, r);
                EXPECT_NEAR(std::abs(closed - prod), 0.0, 1e-7 * std::max(1.0, std::abs(prod))) << p << " " << r;
            }
        }
    }
}

TEST(Modular, ResidueHistogramTotals) {
    ResidueHistogram h(12);
    std::complex<double> direct = 0.0;
    for (std::int64_t k = 0; k < 50; ++k) {
        h.add(k * k % 12, 1 + k % 3);
        direct += static_cast<double>(1 + k % 3) * oracle::e(static_cast<double>(k * k % 12) / 12.0);
    }
    EXPECT_NEAR(std::abs(h.total() - direct), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(e_q(-5, 12) - oracle::e(7.0 / 12.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(e_real(2.25) - std::complex<double>(0.0, 1.0)), 0.0, 1e-15);
}

TEST(Modular, IntegerPowerOverflowIsReported) {
    EXPECT_EQ(ipow(11, 3), 1331);
    EXPECT_THROW(ipow(10, 19), TooLarge);
}
