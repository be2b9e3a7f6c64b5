#include <algorithm>
#include <cmath>

#include "fft.hpp"
#include "quadpair/delta.hpp"
#include "quadpair/errors.hpp"
#include "quadpair/oscint.hpp"

namespace quadpair {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

ComplexVal phase(double t) {
    t -= std::round(t);
    return {std::cos(kTwoPi * t), std::sin(kTwoPi * t)};
}

std::int64_t next_pow2(double v) {
    std::int64_t n = 1;
    while (static_cast<double>(n) < v) n *= 2;
    return n;
}

// Margin kept untapered around psi1([-1,1]^4), and the width and steepness of the roll-off.
constexpr double kMargin = 0.25;
constexpr double kRolloff = 4.0;
constexpr double kSigma = kRolloff / 18.0;

}  // namespace

SpectralIntegral::SpectralIntegral(const FormPair& pair, std::int64_t q, double c, double B)
    : pair_(pair), B_(B) {
    const IntegralParams params(pair, q, c, B, Vec4{0, 0, 0, 0});
    x_ = params.x();
    modulus_ = static_cast<double>(q) * c;
    vanishes_ = params.vanishes();
    if (vanishes_) return;

    const double smin = pair.psi1_min_on_cube(), smax = pair.psi1_max_on_cube();
    const double lo_mid = smin - kMargin - kRolloff / 2.0;
    const double hi_mid = smax + kMargin + kRolloff / 2.0;
    const double span = (hi_mid - lo_mid) + kRolloff;
    period_ = static_cast<double>(next_pow2(span));
    start_ = 0.5 * (lo_mid + hi_mid) - period_ / 2.0;
    auto taper = [&](double s) {
        return 0.25 * std::erfc((s - hi_mid) / (std::sqrt(2.0) * kSigma)) *
               std::erfc((lo_mid - s) / (std::sqrt(2.0) * kSigma));
    };

    std::int64_t n = std::max<std::int64_t>(1024, next_pow2(period_ / (x_ / 256.0)));
    std::vector<ComplexVal> spectrum;
    for (;; n *= 2) {
        if (n > (std::int64_t{1} << 23)) throw BudgetExhausted("Fourier series of h needs more than 2^23 samples");
        const double ds = period_ / static_cast<double>(n);
        spectrum.assign(static_cast<std::size_t>(n), ComplexVal{});
        for (std::int64_t j = 0; j < n; ++j) {
            double s = start_ + ds * static_cast<double>(j);
            spectrum[static_cast<std::size_t>(j)] = h_function(x_, s) * taper(s);
        }
        detail::Fft::forward(spectrum);
        double peak = 0.0, high = 0.0;
        for (std::int64_t j = 0; j < n; ++j) {
            std::int64_t k = j <= n / 2 ? j : j - n;
            double m = std::abs(spectrum[static_cast<std::size_t>(j)]);
            peak = std::max(peak, m);
            if (std::llabs(k) >= n / 4) high = std::max(high, m);
        }
        if (high <= 1e-14 * peak) break;
    }
    double peak = 0.0;
    for (auto& v : spectrum) peak = std::max(peak, std::abs(v));
    std::int64_t kmax = 0;
    for (std::int64_t j = 0; j < n; ++j) {
        std::int64_t k = j <= n / 2 ? j : j - n;
        if (std::abs(spectrum[static_cast<std::size_t>(j)]) > 1e-15 * peak) kmax = std::max<std::int64_t>(kmax, std::llabs(k));
    }
    for (std::int64_t k = -kmax; k <= kmax; ++k) {
        auto j = static_cast<std::size_t>((k % n + n) % n);
        // Sample j sits at start + j ds, so the series coefficient picks up e(-k start / period).
        taus_.push_back(static_cast<double>(k) / period_);
        coeffs_.push_back(spectrum[j] / static_cast<double>(n) * phase(-static_cast<double>(k) * start_ / period_));
    }
}

double SpectralIntegral::tau_max() const { return taus_.empty() ? 0.0 : taus_.back(); }

ComplexVal SpectralIntegral::series(double s) const {
    ComplexVal total{};
    for (std::size_t k = 0; k < taus_.size(); ++k) total += coeffs_[k] * phase(taus_[k] * s);
    return total;
}

ComplexVal SpectralIntegral::axis_factor(double a, double tau, double xi) {
    const double band = 2.0 * std::fabs(a * tau) + std::fabs(xi) + weight_band;
    const double hy = 1.0 / (2.0 * band);
    const auto J = static_cast<std::int64_t>(std::ceil(1.0 / hy));
    ComplexVal total{};
    for (std::int64_t j = -J; j <= J; ++j) {
        double y = hy * static_cast<double>(j);
        double wy = weight_profile(y);
        if (wy == 0.0) continue;
        total += wy * phase(tau * a * y * y - xi * y);
    }
    return hy * total;
}

std::vector<ComplexVal> SpectralIntegral::axis_factors(double a, double xi) const {
    std::vector<ComplexVal> out(taus_.size());
    if (taus_.empty()) return out;
    const double band = 2.0 * std::fabs(a * tau_max()) + std::fabs(xi) + weight_band;
    const double hy = 1.0 / (2.0 * band);
    const auto J = static_cast<std::int64_t>(std::ceil(1.0 / hy));
    std::vector<ComplexVal> base, step, current;
    std::vector<double> chirp;
    for (std::int64_t j = -J; j <= J; ++j) {
        double y = hy * static_cast<double>(j);
        double wy = weight_profile(y);
        if (wy == 0.0) continue;
        base.push_back(wy * phase(-xi * y));
        chirp.push_back(a * y * y);
        step.push_back(phase(a * y * y / period_));
    }
    current.resize(base.size());
    // e(tau_k a y^2) by repeated multiplication, re-anchored every 128 modes to bound drift.
    for (std::size_t k = 0; k < taus_.size(); ++k) {
        if (k % 128 == 0) {
            for (std::size_t j = 0; j < base.size(); ++j) current[j] = phase(taus_[k] * chirp[j]);
        } else {
            for (std::size_t j = 0; j < base.size(); ++j) current[j] *= step[j];
        }
        ComplexVal total{};
        for (std::size_t j = 0; j < base.size(); ++j) total += base[j] * current[j];
        out[k] = hy * total;
    }
    return out;
}

ComplexVal SpectralIntegral::at(const Vec4& w) const {
    if (vanishes_) return {};
    std::array<std::vector<ComplexVal>, 4> f;
    for (std::size_t i = 0; i < 4; ++i)
        f[i] = axis_factors(static_cast<double>(pair_.a()[i]), B_ * static_cast<double>(w[i]) / modulus_);
    ComplexVal total{};
    for (std::size_t k = 0; k < coeffs_.size(); ++k) total += coeffs_[k] * f[0][k] * f[1][k] * f[2][k] * f[3][k];
    return total;
}

}  // namespace quadpair
