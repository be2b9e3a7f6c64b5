#pragma once

#include <cstdint>
#include <vector>

#include "quadpair/forms.hpp"
#include "quadpair/modular.hpp"
#include "quadpair/oscint.hpp"

namespace quadpair {

/**
 * sum_{|w|_inf <= R} S_{q,c}(w) I_{q,c}(w) for each R in radii (ascending).
 *
 * Uses the mode expansion of I: for one mode tau the w-sum factors into per-coordinate sums
 * Lambda_i(k) = sum_{|w_i| <= R} e_N(w_i k) F(a_i, tau, B w_i / N), N = qc, and those combine with the
 * per-coordinate class sums of S exactly as in CharSumKernel::couple. F on the whole w-range comes
 * from one FFT of trapezoid samples per mode and coordinate.
 */
std::vector<ComplexVal> poisson_term(const SpectralIntegral& integral, std::int64_t q, std::int64_t c,
                                     const std::vector<std::int64_t>& radii);

struct PoissonSideOptions {
    /// A shell counts as negligible when it moves the total by less than this, relative.
    double shell_tol = 1e-8;
    int shells_required = 3;
};

struct PoissonShell {
    /// Frequency band: coordinate |w_i| runs up to floor(band * qc / B) for every c.
    double band;
    ComplexVal total;
};

struct PoissonSide {
    ComplexVal value{};
    double tail_estimate = 0.0;
    double band_used = 0.0;
    /// cQ B^2 / q^3
    double prefactor = 0.0;
    std::int64_t c_max = 0;
    std::vector<PoissonShell> shells;
    /// c^{-4} sum_w S I at the final band, one entry per c = 1..c_max.
    std::vector<ComplexVal> per_c;
    std::vector<std::int64_t> modes_per_c;
};

/**
 * cQ (B^2 / q^3) sum_{c <= c_max} c^{-4} sum_w S_{q,c}(w) I_{q,c}(w), which equals the weighted count
 * T_q(B) of zeros of psi1 twisted by chi_q(psi2). c_max is the last c where I_{q,c} can be nonzero.
 * Bands grow by sqrt(2); the reported value stops at the first band followed by shells_required
 * negligible shells and the tail estimate adds up everything computed past it.
 */
PoissonSide poisson_side_sum(const FormPair& pair, std::int64_t q, double B, const PoissonSideOptions& opts = {});

}  // namespace quadpair
