#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "oracle.hpp"
#include "quadpair/delta.hpp"
#include "quadpair/errors.hpp"

using namespace quadpair;

namespace {

double raw_bump(double t) { return (t > 0.5 && t < 1.0) ? std::exp(-1.0 / ((t - 0.5) * (1.0 - t))) : 0.0; }

}  // namespace

TEST(Delta, BumpHasUnitMassAndSupport) {
    const int n = 400000;
    double raw = 0.0, lib = 0.0;
    for (int i = 0; i < n; ++i) {
        double t = 0.5 + (i + 0.5) * 0.5 / n;
        raw += raw_bump(t);
        lib += bump_w0(t);
    }
    raw *= 0.5 / n;
    lib *= 0.5 / n;
    EXPECT_NEAR(lib, 1.0, 1e-10);
    EXPECT_NEAR(bump_w0_constant(), 1.0 / raw, 1e-8 / raw);
    for (double t : {-1.0, 0.0, 0.5, 1.0, 1.5}) EXPECT_EQ(bump_w0(t), 0.0);
    EXPECT_NEAR(bump_w0(0.7), bump_w0_constant() * raw_bump(0.7), 1e-14);
}

TEST(Delta, BumpDerivativeMatchesDifferenceQuotient) {
    for (double t : {0.55, 0.6, 0.75, 0.9, 0.97}) {
        const double d = 1e-6;
        double fd = (bump_w0(t + d) - bump_w0(t - d)) / (2 * d);
        EXPECT_NEAR(bump_w0_derivative(t), fd, 1e-5 * std::max(1.0, std::fabs(fd)));
    }
}

TEST(Delta, KernelFormulaAndSupport) {
    for (double x : {0.1, 0.3, 0.8, 1.2, 3.0}) {
        for (double y : {0.0, 0.05, -0.4, 1.0, 2.5}) {
            double s = 0.0;
            for (int j = 1; j < 200; ++j) s += (bump_w0(x * j) - bump_w0(std::fabs(y) / (x * j))) / (x * j);
            EXPECT_NEAR(h_function(x, y), s, 1e-10 * std::max(1.0, std::fabs(s))) << x << " " << y;
        }
    }
    // Zero once x > max(1, 2|y|).
    for (double y : {0.0, 0.3, 0.5, 1.7}) {
        double edge = std::max(1.0, 2.0 * std::fabs(y));
        EXPECT_EQ(h_function(edge * 1.001, y), 0.0);
        EXPECT_EQ(h_function(edge * 5.0, -y), 0.0);
    }
    EXPECT_THROW(h_function(0.0, 1.0), DomainError);
}

TEST(Delta, KernelIsEvenInY) {
    for (double x : {0.2, 0.6, 1.5})
        for (double y : {0.1, 0.45, 1.3}) EXPECT_EQ(h_function(x, y), h_function(x, -y));
}

TEST(Delta, YDerivativeMatchesDifferenceQuotient) {
    for (double x : {0.3, 0.7, 1.5}) {
        for (double y : {0.2, 0.5, 1.0, -0.6}) {
            const double d = 1e-6;
            double fd = (h_function(x, y + d) - h_function(x, y - d)) / (2 * d);
            EXPECT_NEAR(h_function_dy(x, y), fd, 1e-4 * std::max(1.0, std::fabs(fd))) << x << " " << y;
        }
    }
}

TEST(Delta, NormalisingConstantFromZeroFrequency) {
    // At n = 0 the expansion reads 1 = (cQ / Q^2) sum_q phi(q) h(q/Q, 0).
    for (double Q : {5.0, 10.0, 20.0}) {
        double s = 0.0;
        for (std::int64_t q = 1; q <= static_cast<std::int64_t>(Q) + 1; ++q) {
            std::int64_t phi = 0;
            for (std::int64_t a = 1; a <= q; ++a) phi += std::gcd(a, q) == 1;
            s += static_cast<double>(phi) * h_function(static_cast<double>(q) / Q, 0.0);
        }
        EXPECT_NEAR(compute_cQ(Q), Q * Q / s, 1e-10 * Q * Q / s);
    }
    EXPECT_THROW(compute_cQ(1.5), DomainError);
}

TEST(Delta, ReconstructsIndicatorOfZero) {
    for (double Q : {2.5, 5.0, 7.5, 10.0}) {
        DeltaKernel kernel(Q);
        const auto range = static_cast<std::int64_t>(Q * Q) + 3;
        for (std::int64_t n = -range; n <= range; ++n) {
            EXPECT_NEAR(kernel.delta_reconstruct(n), n == 0 ? 1.0 : 0.0, 1e-9) << Q << " " << n;
        }
    }
    DeltaKernel kernel(4.0);
    EXPECT_EQ(kernel.max_modulus(0), 4);
    EXPECT_EQ(kernel.max_modulus(40), 20);
    EXPECT_THROW(kernel.delta_reconstruct(2000000), TooLarge);
    EXPECT_THROW(DeltaKernel(2.0), DomainError);
}

TEST(Delta, KernelMemberMatchesFreeFunction) {
    DeltaKernel kernel(6.0);
    for (double x : {0.2, 0.9})
        for (double y : {0.0, 0.7}) EXPECT_EQ(kernel.h(x, y), h_function(x, y));
}
