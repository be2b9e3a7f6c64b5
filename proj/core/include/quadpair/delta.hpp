#pragma once

#include <cstdint>

#include "quadpair/forms.hpp"

namespace quadpair {

/// Smooth bump on (1/2, 1) with unit integral: K * exp(-1 / ((t - 1/2)(1 - t))).
double bump_w0(double t);
/// The normalizing constant K, fixed once by composite Gauss-Legendre quadrature.
double bump_w0_constant();
/// d/dt of bump_w0.
double bump_w0_derivative(double t);

/**
 * Delta-symbol kernel at level Q: the function h(x, y) and the constant cQ for which
 * delta(n) = (cQ / Q^2) * sum_q c_q(n) h(q / Q, n / Q^2) holds exactly.
 */
class DeltaKernel {
public:
    /// Requires Q > 2 (otherwise the d-range (Q/2, Q) of the cQ sum is empty).
    explicit DeltaKernel(double Q);

    double Q() const { return Q_; }
    double cQ() const { return cQ_; }

    /// sum_{j>=1} (xj)^{-1} (w0(xj) - w0(|y| / (xj))); exactly 0 for x > max(1, 2|y|).
    double h(double x, double y) const;
    /// Largest modulus with h(q/Q, n/Q^2) possibly nonzero.
    std::int64_t max_modulus(i128 n) const;
    /// Finite reconstruction of the indicator of n = 0.
    double delta_reconstruct(i128 n) const;

private:
    double Q_;
    double cQ_;
};

double h_function(double x, double y);
/// Partial derivative of h(x, y) in y.
double h_function_dy(double x, double y);
double compute_cQ(double Q);

}  // namespace quadpair
