#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "quadpair/forms.hpp"
#include "quadpair/weight.hpp"

namespace quadpair {

enum class CountLabel { M, Mstar, Tq, Nproxy, isotropic };
std::string to_string(CountLabel label);

struct CountRecord {
    std::int64_t B = 0;
    CountLabel label = CountLabel::M;
    std::int64_t q_or_P = 0;
    double value = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    double seconds = 0.0;
};

/// Every x with |x_i| <= B and psi1(x) = 0, ordered by x1, then x2, x3, x4.
std::vector<Vec4> enumerate_psi1_zeros(const FormPair& pair, std::int64_t B);

/// Zeros of an arbitrary diagonal form with 128-bit coefficients (last coefficient nonzero).
std::vector<Vec4> enumerate_zeros(const std::array<i128, 4>& coeffs, std::int64_t B);

std::int64_t count_M(const FormPair& pair, std::int64_t B);
std::int64_t count_M(const FormPair& pair, std::int64_t B, const std::vector<Vec4>& zeros);
std::int64_t count_N_proxy(const FormPair& pair, std::int64_t B);
double count_M_star(const FormPair& pair, std::int64_t B, const SmoothWeight& weight = {});
double count_M_star(const FormPair& pair, std::int64_t B, const std::vector<Vec4>& zeros, const SmoothWeight& weight = {});
double t_q(const FormPair& pair, std::int64_t q, std::int64_t B, const SmoothWeight& weight = {});
double t_q(const FormPair& pair, std::int64_t q, std::int64_t B, const std::vector<Vec4>& zeros,
           const SmoothWeight& weight = {});
/// Sum of W(x/B) over the zeros (the trivial bound for |T_q(B)|).
double smooth_zero_mass(std::int64_t B, const std::vector<Vec4>& zeros, const SmoothWeight& weight = {});
std::int64_t count_isotropic_w(const FormPair& pair, std::int64_t R);

struct ExponentFit {
    double slope = 0.0;
    double stderr_slope = 0.0;
    std::size_t used = 0;
    std::vector<std::string> warnings;
};
/// Least-squares slope of log(value) against log(B); nonpositive values are skipped with a warning.
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& records);

/// The P smallest primes above P log(max(P, 3)) that do not divide 2 alpha D.
std::vector<std::int64_t> sieve_primes(const FormPair& pair, std::int64_t P);

struct SieveDecomposition {
    std::vector<std::int64_t> primes;
    double mstar = 0.0;
    /// (1/P^2) sum_p sum_x W chi_p(psi2)^2.
    double diagonal_term = 0.0;
    /// (1/P^2) sum_{p1 != p2} T_{p1 p2}(B).
    double offdiag_term = 0.0;
    double majorant_rhs = 0.0;
    /// Weight of zeros with psi2(x) = 0, where every chi_p vanishes but theta = 1.
    double zero_term = 0.0;
};
/**
 * Square-sieve decomposition of M*(B). Requires that no nonzero square n = m^2 in the box can have
 * more than P/2 prime factors from the prime set (checked via the product of the smallest P/2 + 1 primes).
 */
SieveDecomposition sieve_decompose(const FormPair& pair, std::int64_t B, std::int64_t P, const SmoothWeight& weight = {});
SieveDecomposition sieve_decompose(const FormPair& pair, std::int64_t B, std::int64_t P, const std::vector<Vec4>& zeros,
                                   const SmoothWeight& weight = {});

}  // namespace quadpair
