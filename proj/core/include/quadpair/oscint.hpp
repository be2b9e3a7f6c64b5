#pragma once

#include <cstdint>
#include <vector>

#include "quadpair/forms.hpp"
#include "quadpair/modular.hpp"
#include "quadpair/weight.hpp"

namespace quadpair {

/**
 * I_{q,c}(w) = int W(y) h(c/Q, psi1(y)) e(-B w.y / (qc)) dy with Q = B / sqrt(q).
 * c may be fractional so that the integral can be differentiated in c.
 */
struct IntegralParams {
    IntegralParams(FormPair pair, std::int64_t q, double c, double B, Vec4 w);

    FormPair pair;
    std::int64_t q;
    double c;
    double B;
    Vec4 w;

    double Q() const;
    /// c / Q, the first argument of h.
    double x() const;
    /// Frequency B w_i / (qc) of coordinate i.
    double xi(int i) const;
    /// True when c/Q > max(1, 2 sup|psi1|) on the cube, where h vanishes on the whole integrand.
    bool vanishes() const;
};

struct QuadratureOptions {
    double tol = 1e-6;
    std::int64_t budget = 100'000'000;
};

struct IntegralResult {
    ComplexVal value{};
    bool converged = false;
    std::int64_t evaluations = 0;
    double last_change = 0.0;
    std::int64_t nodes_per_axis = 0;
};

/// h(x, .) on [lo, hi], cubic Hermite through exact values and slopes at spacing x/1000.
class HProfile {
public:
    HProfile(double x, double lo, double hi);
    double operator()(double s) const;
    double spacing() const { return ds_; }

private:
    double x_, lo_, ds_;
    std::vector<double> value_, slope_;
};

/**
 * Tensor Gauss-Legendre (order 8 per panel) with the number of panels per axis doubled until two
 * successive estimates differ by less than tol; a result that runs out of budget is returned with
 * converged = false.
 */
IntegralResult i_qc(const IntegralParams& params, const QuadratureOptions& opts = {});

struct BatchResult {
    std::int64_t radius = 0;
    /// Lexicographic order of w over the box |w|_inf <= radius.
    std::vector<Vec4> w;
    std::vector<ComplexVal> values;
    bool converged = false;
    std::int64_t nodes_per_axis = 0;
    double last_change = 0.0;

    ComplexVal at(const Vec4& v) const;
};

/**
 * All I_{q,c}(w) with |w|_inf <= radius from one sampling of W(y) h(c/Q, psi1(y)) on a uniform
 * grid of [-1, 1]^4 (trapezoid rule, exact for the periodized integrand) followed by a separable
 * discrete Fourier transform at the frequencies B w / (qc). The grid is doubled until the largest
 * change over the box is below tol.
 */
BatchResult i_qc_batch(const FormPair& pair, std::int64_t q, double c, double B, std::int64_t radius,
                       const QuadratureOptions& opts = {});

/**
 * I_{q,c} through the Fourier series of h(c/Q, .) on a window containing psi1([-1, 1]^4):
 * with h(c/Q, s) = sum_k c_k e(tau_k s) there, every term factors over the coordinates,
 * I(w) = sum_k c_k prod_i F(a_i, tau_k, B w_i / (qc)), F(a, tau, xi) = int W1(y) e(tau a y^2 - xi y) dy.
 * Outside the window h is rolled off by an erfc taper so the series converges quickly.
 */
class SpectralIntegral {
public:
    SpectralIntegral(const FormPair& pair, std::int64_t q, double c, double B);

    bool vanishes() const { return vanishes_; }
    double x() const { return x_; }
    double modulus() const { return modulus_; }
    double B() const { return B_; }
    const FormPair& pair() const { return pair_; }
    double period() const { return period_; }
    /// Frequencies tau_k = k / period of the retained modes, and their coefficients.
    const std::vector<double>& taus() const { return taus_; }
    const std::vector<ComplexVal>& coeffs() const { return coeffs_; }
    double tau_max() const;

    /// The truncated series at s (equals h(c/Q, s) inside the window up to round-off).
    ComplexVal series(double s) const;
    ComplexVal at(const Vec4& w) const;

    /// Trapezoid evaluation of F(a, tau, xi); the grid follows the local frequency bound.
    static ComplexVal axis_factor(double a, double tau, double xi);
    /// F(a, tau_k, xi) for all retained modes at once.
    std::vector<ComplexVal> axis_factors(double a, double xi) const;

    /// Frequency bound past which F(a, tau, .) is below 1e-15 of its size: 2|a tau| + this.
    static constexpr double weight_band = 64.0;

private:
    FormPair pair_;
    double x_, modulus_, B_;
    bool vanishes_;
    double period_ = 0.0, start_ = 0.0;
    std::vector<double> taus_;
    std::vector<ComplexVal> coeffs_;
};

struct DecayRow {
    std::int64_t c;
    std::int64_t q1;
    std::int64_t t;
    Vec4 w;
    double norm_w;
    double abs_I;
    /// (q1^2 t q2 / B) / |w|
    double ref_value;
    double ratio_value;
    /// |d/dt I|, central difference in c.
    double abs_dI_dt;
    /// (q1^2 q2 / B) / |w|
    double ref_derivative;
    double ratio_derivative;
    /// |d/dt I(-w)|, for the conjugation symmetry.
    double abs_dI_dt_neg;
};

struct DecayReport {
    std::vector<DecayRow> rows;
    double max_ratio_value = 0.0;
    double max_ratio_derivative = 0.0;
};

/**
 * |I_{q,c}(w)| and its t-derivative (c = q1 t, q1 = gcd(c, q), q2 = q / q1) against the references
 * (q1^2 t q2 / B)/|w| and (q1^2 q2 / B)/|w| on a grid of c with nonempty support and of w along
 * fixed directions with multiples 1..w_max.
 */
DecayReport decay_report(const FormPair& pair, std::int64_t q, double B, const std::vector<std::int64_t>& c_grid,
                         std::int64_t w_max);

/// Largest c for which I_{q,c} can be nonzero.
std::int64_t integral_c_max(const FormPair& pair, std::int64_t q, double B);

}  // namespace quadpair
