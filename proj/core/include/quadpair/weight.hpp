#pragma once

#include <array>

namespace quadpair {

/// 1-D profile exp(1 - 1/(1 - t^2)) on (-1, 1): peak 1 at t = 0, zero outside.
double weight_profile(double t);

/// W(y) = prod_i profile(y_i), the smooth weight of the counts M*(B) and T_q(B).
double weight_W(const std::array<double, 4>& y);

/// Weight used by the smoothed counters; callable on points scaled by 1/B.
struct SmoothWeight {
    double operator()(const std::array<double, 4>& y) const { return weight_W(y); }
};

}  // namespace quadpair
