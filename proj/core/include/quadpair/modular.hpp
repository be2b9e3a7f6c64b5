#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "quadpair/forms.hpp"

namespace quadpair {

using ComplexVal = std::complex<double>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);
/// Distinct prime factors, ascending.
std::vector<std::uint64_t> factorize(std::uint64_t n);
std::int64_t gcd64(std::int64_t a, std::int64_t b);
/// n mod m in [0, m) for any sign of n.
std::int64_t mod_reduce(i128 n, std::int64_t m);

/// Odd or even squarefree positive modulus with its sorted prime factors.
class SquarefreeModulus {
public:
    explicit SquarefreeModulus(std::int64_t q);

    std::int64_t value() const { return q_; }
    const std::vector<std::int64_t>& primes() const { return primes_; }
    bool is_odd() const { return q_ % 2 == 1; }

private:
    std::int64_t q_;
    std::vector<std::int64_t> primes_;
};

/// Euler's criterion. Throws InvalidModulus unless p is an odd prime.
int legendre(i128 n, std::int64_t p);
/// Product of Legendre symbols over the prime factors; 1 for q = 1.
int jacobi(i128 n, const SquarefreeModulus& q);

std::int64_t mod_inverse(std::int64_t a, std::int64_t m);
/// Residue r mod m1*m2 with r = r1 (m1), r = r2 (m2).
std::int64_t crt_pair(std::int64_t r1, std::int64_t m1, std::int64_t r2, std::int64_t m2);

int mobius(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
/// c_q(n) = sum over d | (q, n) of d * mu(q / d).
std::int64_t ramanujan_sum(std::int64_t q, i128 n);
ComplexVal ramanujan_bruteforce(std::int64_t q, i128 n);

/// e_q(x) = exp(2 pi i x / q) with x reduced mod q first.
ComplexVal e_q(i128 x, std::int64_t q);
/// exp(2 pi i t) for real t, reduced to [0, 1) first.
ComplexVal e_real(double t);

/// Accumulates integer multiplicities of residues mod q and sums e_q once at the end.
class ResidueHistogram {
public:
    explicit ResidueHistogram(std::int64_t q);
    void add(std::int64_t residue, std::int64_t weight = 1) { counts_[static_cast<std::size_t>(residue)] += weight; }
    void merge(const ResidueHistogram& other);
    ComplexVal total() const;
    std::int64_t modulus() const { return q_; }

private:
    std::int64_t q_;
    std::vector<std::int64_t> counts_;
};

ComplexVal gauss_sum(std::int64_t p);

/// Closed form of sum over k mod p^r of e_{p^r}(m * gamma * k^2).
ComplexVal quad_gauss_sum_closed(std::int64_t m, std::int64_t gamma, std::int64_t p, int r);
ComplexVal quad_gauss_sum_brute(std::int64_t m, std::int64_t gamma, std::int64_t p, int r);

/// Closed form of sum over k mod p^r (4-dim) of e_{p^r}(m * phi(k) + k . w).
ComplexVal exp_sum_quad4(const DiagonalForm& phi, std::int64_t m, const Vec4& w, std::int64_t p, int r);
ComplexVal exp_sum_quad4_brute(const DiagonalForm& phi, std::int64_t m, const Vec4& w, std::int64_t p, int r);

std::int64_t ipow(std::int64_t base, int exp);

}  // namespace quadpair
