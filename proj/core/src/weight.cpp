#include "quadpair/weight.hpp"

#include <cmath>

namespace quadpair {

double weight_profile(double t) {
    if (!(t > -1.0 && t < 1.0)) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

double weight_W(const std::array<double, 4>& y) {
    double w = 1.0;
    for (double t : y) {
        w *= weight_profile(t);
        if (w == 0.0) return 0.0;
    }
    return w;
}

}  // namespace quadpair
