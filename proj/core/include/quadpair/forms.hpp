#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace quadpair {

using i128 = __int128;
using Vec4 = std::array<std::int64_t, 4>;
using Coeffs4 = std::array<std::int64_t, 4>;

/// Quaternary diagonal form sum(gamma_i * x_i^2) with nonzero coefficients below 2^31.
class DiagonalForm {
public:
    explicit DiagonalForm(const Coeffs4& coeffs);

    const Coeffs4& coeffs() const { return coeffs_; }
    std::int64_t operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
    /// gamma = product of the coefficients (always fits: 4 * 31 bits).
    i128 product() const;

private:
    Coeffs4 coeffs_;
};

/// Exact value of sum(gamma_i * x_i^2); requires |x_i| <= 2^30.
i128 eval_form(const DiagonalForm& form, const Vec4& x);

/// Same as eval_form but for raw coefficient rows that may contain zeros.
i128 eval_coeffs(const Coeffs4& coeffs, const Vec4& x);

/// Dual form with coefficients gamma / gamma_i. The coefficients can exceed 64 bits.
struct TildeForm {
    std::array<i128, 4> coeffs;
    i128 gamma;

    /// Exact value at w; throws TooLarge on 128-bit overflow.
    i128 eval(const Vec4& w) const;
    /// Value reduced into [0, m).
    std::int64_t eval_mod(const Vec4& w, std::int64_t m) const;
};

TildeForm tilde(const DiagonalForm& form);

/// c_i = b_i + ell * a_i reduced mod p.
struct PencilCoeffs {
    std::array<std::int64_t, 4> c;
    std::int64_t ell;
    std::int64_t p;
};

struct CompatibilityReport {
    /// Order (12, 13, 14, 23, 24, 34).
    std::array<std::int64_t, 6> minors{};
    i128 alpha = 0;
    /// Product of the minors; empty if it does not fit in 128 bits.
    std::optional<i128> D;
    bool is_compatible = false;
    std::vector<int> zero_minors;
    std::string reason;
};

/// The pair (psi1, psi2) given by coefficient rows a and b.
class FormPair {
public:
    FormPair(const Coeffs4& a, const Coeffs4& b);

    const Coeffs4& a() const { return a_; }
    const Coeffs4& b() const { return b_; }
    DiagonalForm psi1() const { return DiagonalForm(a_); }

    i128 psi1_at(const Vec4& x) const { return eval_coeffs(a_, x); }
    i128 psi2_at(const Vec4& x) const { return eval_coeffs(b_, x); }

    i128 alpha() const;
    std::array<std::int64_t, 6> minors() const;
    /// True iff p divides 2 * alpha * D, computed factor by factor (no overflow).
    bool divides_2alphaD(std::int64_t p) const;
    /// Distinct primes of 2 * alpha * D.
    std::vector<std::int64_t> bad_primes() const;

    /// Largest |psi1(y)| over the cube [-1,1]^4 and the signed extremes.
    double psi1_min_on_cube() const;
    double psi1_max_on_cube() const;

    static FormPair canonical();

private:
    Coeffs4 a_;
    Coeffs4 b_;
};

CompatibilityReport check_compatibility(const FormPair& pair);

PencilCoeffs pencil(const FormPair& pair, std::int64_t ell, std::int64_t p);

bool is_perfect_square(i128 n);

/// floor(sqrt(n)) for n >= 0.
std::uint64_t isqrt_u128(unsigned __int128 n);

}  // namespace quadpair
