#include "quadpair/delta.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "quadpair/errors.hpp"
#include "quadpair/modular.hpp"

namespace quadpair {

namespace {

double w0_unnormalized(double t) {
    if (t <= 0.5 || t >= 1.0) return 0.0;
    return std::exp(-1.0 / ((t - 0.5) * (1.0 - t)));
}

double integrate_w0_unnormalized() {
    using rule = boost::math::quadrature::gauss<double, 20>;
    constexpr int panels = 256;
    const double width = 0.5 / panels;
    double total = 0.0;
    for (int k = 0; k < panels; ++k) {
        double lo = 0.5 + k * width;
        total += rule::integrate([](double t) { return w0_unnormalized(t); }, lo, lo + width);
    }
    return total;
}

}  // namespace

double bump_w0_constant() {
    static const double k = 1.0 / integrate_w0_unnormalized();
    return k;
}

double bump_w0(double t) { return bump_w0_constant() * w0_unnormalized(t); }

double bump_w0_derivative(double t) {
    if (t <= 0.5 || t >= 1.0) return 0.0;
    const double g = (t - 0.5) * (1.0 - t);
    return bump_w0(t) * (1.5 - 2.0 * t) / (g * g);
}

double h_function_dy(double x, double y) {
    if (!(x > 0.0)) throw DomainError("h(x, y) needs x > 0");
    double ay = std::fabs(y);
    if (ay == 0.0 || x > std::max(1.0, 2.0 * ay)) return 0.0;
    double s = 0.0;
    for (auto j = static_cast<std::int64_t>(std::floor(ay / x)); static_cast<double>(j) * x < 2.0 * ay; ++j) {
        if (j < 1) continue;
        double xj = x * static_cast<double>(j);
        s -= bump_w0_derivative(ay / xj) / (xj * xj);
    }
    return y < 0.0 ? -s : s;
}

double h_function(double x, double y) {
    if (!(x > 0.0)) throw DomainError("h(x, y) needs x > 0");
    double ay = std::fabs(y);
    if (x > std::max(1.0, 2.0 * ay)) return 0.0;
    double s = 0.0;
    // w0(xj) != 0 needs xj in (1/2, 1).
    for (auto j = static_cast<std::int64_t>(std::floor(0.5 / x)); static_cast<double>(j) * x < 1.0; ++j) {
        if (j < 1) continue;
        double xj = x * static_cast<double>(j);
        s += bump_w0(xj) / xj;
    }
    // w0(|y| / xj) != 0 needs xj in (|y|, 2|y|).
    if (ay > 0.0) {
        for (auto j = static_cast<std::int64_t>(std::floor(ay / x)); static_cast<double>(j) * x < 2.0 * ay; ++j) {
            if (j < 1) continue;
            double xj = x * static_cast<double>(j);
            s -= bump_w0(ay / xj) / xj;
        }
    }
    return s;
}

double compute_cQ(double Q) {
    // (Q/2, Q) contains an integer only for Q > 2.
    if (!(Q > 2.0)) throw DomainError("cQ needs Q > 2");
    double s = 0.0;
    for (auto d = static_cast<std::int64_t>(std::floor(Q / 2.0)); static_cast<double>(d) < Q; ++d) {
        if (d >= 1) s += bump_w0(static_cast<double>(d) / Q);
    }
    return Q / s;
}

DeltaKernel::DeltaKernel(double Q) : Q_(Q), cQ_(compute_cQ(Q)) {}

double DeltaKernel::h(double x, double y) const { return h_function(x, y); }

std::int64_t DeltaKernel::max_modulus(i128 n) const {
    double an = std::fabs(static_cast<double>(n));
    return static_cast<std::int64_t>(std::floor(Q_ * std::max(1.0, 2.0 * an / (Q_ * Q_))));
}

double DeltaKernel::delta_reconstruct(i128 n) const {
    if (n > 1000000 || n < -1000000) throw TooLarge("delta_reconstruct limited to |n| <= 1e6");
    const double y = static_cast<double>(n) / (Q_ * Q_);
    double s = 0.0;
    const std::int64_t qmax = max_modulus(n);
    for (std::int64_t q = 1; q <= qmax; ++q) {
        double hv = h_function(static_cast<double>(q) / Q_, y);
        if (hv != 0.0) s += static_cast<double>(ramanujan_sum(q, n)) * hv;
    }
    return cQ_ / (Q_ * Q_) * s;
}

}  // namespace quadpair
