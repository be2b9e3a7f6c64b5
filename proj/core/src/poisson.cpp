#include "quadpair/poisson.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"
#include "quadpair/charsum.hpp"
#include "quadpair/delta.hpp"
#include "quadpair/errors.hpp"
#include "quadpair/parallel.hpp"

namespace quadpair {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr std::int64_t kModesPerBlock = 32;

ComplexVal phase(double t) {
    t -= std::round(t);
    return {std::cos(kTwoPi * t), std::sin(kTwoPi * t)};
}

double max_abs_coeff(const FormPair& pair) {
    double m = 0.0;
    for (auto v : pair.a()) m = std::max(m, std::fabs(static_cast<double>(v)));
    return m;
}

}  // namespace

std::vector<ComplexVal> poisson_term(const SpectralIntegral& integral, std::int64_t q, std::int64_t c,
                                     const std::vector<std::int64_t>& radii) {
    std::vector<ComplexVal> out(radii.size());
    if (radii.empty() || integral.vanishes()) return out;
    if (!std::is_sorted(radii.begin(), radii.end()) || radii.front() < 0)
        throw DomainError("poisson_term radii must be ascending and >= 0");
    const FormPair& pair = integral.pair();
    const CharSumKernel kernel(pair, q, c);
    const std::int64_t n = kernel.modulus();
    const auto ns = static_cast<std::size_t>(n);
    const std::int64_t r_max = radii.back();
    const double B = integral.B();

    // Trapezoid spacing N / (B L) puts the frequency B w / N on FFT bin w; L also has to keep the
    // aliased copies of the sampled spectrum (|freq| <= 2|a| tau_max + band) away from |w| <= r_max.
    const double spectral_band = 2.0 * max_abs_coeff(pair) * integral.tau_max() + SpectralIntegral::weight_band;
    std::int64_t L = 1;
    while (L < 2 * r_max + 1 || static_cast<double>(L) < static_cast<double>(r_max) + spectral_band * static_cast<double>(n) / B)
        L *= 2;
    const double hy = static_cast<double>(n) / (B * static_cast<double>(L));
    const auto J = static_cast<std::int64_t>(std::floor(1.0 / hy));
    std::vector<double> y2, wy;
    std::vector<std::size_t> bin;
    for (std::int64_t j = -J; j <= J; ++j) {
        double y = hy * static_cast<double>(j);
        double w = weight_profile(y);
        if (w == 0.0) continue;
        y2.push_back(y * y);
        wy.push_back(w);
        bin.push_back(static_cast<std::size_t>(((j % L) + L) % L));
    }

    const auto& prims = kernel.primitives();
    const auto& roots = kernel.roots();
    const auto& sq = kernel.square_class();
    // e_N(a a_i k^2) as root indices, per primitive residue and coordinate.
    std::vector<std::array<std::vector<std::int64_t>, 4>> twist(prims.size());
    for (std::size_t p = 0; p < prims.size(); ++p) {
        for (std::size_t i = 0; i < 4; ++i) {
            auto& idx = twist[p][i];
            idx.resize(ns);
            std::int64_t m = mod_reduce(static_cast<i128>(prims[p]) * pair.a()[i], n);
            for (std::int64_t k = 0; k < n; ++k)
                idx[static_cast<std::size_t>(k)] = mod_reduce(static_cast<i128>(m) * ((k * k) % n), n);
        }
    }

    // h is real, so the modes come in conjugate pairs tau, -tau; S(w) is real and even in w, which makes the
    // contribution of -tau the conjugate of that of tau. Only tau >= 0 is computed.
    const auto all_modes = static_cast<std::int64_t>(integral.coeffs().size());
    const std::int64_t zero_mode = all_modes / 2;
    const std::int64_t modes = all_modes - zero_mode;
    const std::int64_t blocks = (modes + kModesPerBlock - 1) / kModesPerBlock;
    std::vector<std::vector<ComplexVal>> partial(static_cast<std::size_t>(blocks));
    parallel_blocks(blocks, [&](std::int64_t blk) {
        std::vector<ComplexVal> acc(radii.size());
        std::array<std::vector<ComplexVal>, 4> F, A, lam;
        std::array<std::vector<ComplexVal>, 4> phi;
        for (auto& v : phi) v.resize(static_cast<std::size_t>(q));
        const std::int64_t lo = zero_mode + blk * kModesPerBlock;
        const std::int64_t hi = std::min(all_modes, lo + kModesPerBlock);
        for (std::int64_t k = lo; k < hi; ++k) {
            const double tau = integral.taus()[static_cast<std::size_t>(k)];
            const ComplexVal ck = integral.coeffs()[static_cast<std::size_t>(k)];
            for (std::size_t i = 0; i < 4; ++i) {
                const double a = static_cast<double>(pair.a()[i]);
                F[i].assign(static_cast<std::size_t>(L), ComplexVal{});
                for (std::size_t j = 0; j < y2.size(); ++j) F[i][bin[j]] += wy[j] * phase(tau * a * y2[j]);
                detail::Fft::forward(F[i]);
                for (auto& v : F[i]) v *= hy;
                A[i].assign(ns, ComplexVal{});
            }
            std::int64_t folded = -1;  // |w| <= folded already accumulated into A
            for (std::size_t r = 0; r < radii.size(); ++r) {
                for (std::size_t i = 0; i < 4; ++i) {
                    for (std::int64_t w = folded + 1; w <= radii[r]; ++w) {
                        A[i][static_cast<std::size_t>(w % n)] += F[i][static_cast<std::size_t>(w % L)];
                        if (w > 0) A[i][static_cast<std::size_t>((n - w % n) % n)] += F[i][static_cast<std::size_t>(L - w % L) % static_cast<std::size_t>(L)];
                    }
                    lam[i] = A[i];
                    detail::Fft::backward(lam[i]);
                }
                folded = radii[r];
                ComplexVal sum{};
                for (std::size_t p = 0; p < prims.size(); ++p) {
                    for (std::size_t i = 0; i < 4; ++i) {
                        std::fill(phi[i].begin(), phi[i].end(), ComplexVal{});
                        const auto& idx = twist[p][i];
                        for (std::size_t kk = 0; kk < ns; ++kk)
                            phi[i][static_cast<std::size_t>(sq[kk])] += roots[static_cast<std::size_t>(idx[kk])] * lam[i][kk];
                    }
                    sum += kernel.couple(phi);
                }
                acc[r] += k == zero_mode ? ck * sum : 2.0 * (ck * sum).real();
            }
        }
        partial[static_cast<std::size_t>(blk)] = std::move(acc);
    });
    for (const auto& part : partial)
        for (std::size_t r = 0; r < out.size(); ++r) out[r] += part[r];
    return out;
}

PoissonSide poisson_side_sum(const FormPair& pair, std::int64_t q, double B, const PoissonSideOptions& opts) {
    PoissonSide side;
    const double Q = B / std::sqrt(static_cast<double>(q));
    side.prefactor = compute_cQ(Q) * B * B / std::pow(static_cast<double>(q), 3);
    side.c_max = integral_c_max(pair, q, B);

    std::vector<SpectralIntegral> integrals;
    double band_max = 0.0;
    for (std::int64_t c = 1; c <= side.c_max; ++c) {
        integrals.emplace_back(pair, q, static_cast<double>(c), B);
        double band = 2.0 * max_abs_coeff(pair) * integrals.back().tau_max() + SpectralIntegral::weight_band;
        band_max = std::max(band_max, band);
    }
    std::vector<double> bands{0.0};
    for (double b = 1.0; b < band_max; b *= std::sqrt(2.0)) bands.push_back(b);
    bands.push_back(band_max);

    std::vector<ComplexVal> totals(bands.size());
    for (std::int64_t c = 1; c <= side.c_max; ++c) {
        const auto& integral = integrals[static_cast<std::size_t>(c - 1)];
        const double n_over_b = static_cast<double>(q * c) / B;
        const double own_band = 2.0 * max_abs_coeff(pair) * integral.tau_max() + SpectralIntegral::weight_band;
        const auto cap = static_cast<std::int64_t>(std::ceil(own_band * n_over_b));
        std::vector<std::int64_t> radii;
        for (double b : bands) radii.push_back(std::min(cap, static_cast<std::int64_t>(std::floor(b * n_over_b))));
        // poisson_term wants distinct ascending radii; map back afterwards.
        std::vector<std::int64_t> distinct = radii;
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        auto values = poisson_term(integral, q, c, distinct);
        const double weight = 1.0 / std::pow(static_cast<double>(c), 4);
        for (std::size_t j = 0; j < radii.size(); ++j) {
            auto pos = std::lower_bound(distinct.begin(), distinct.end(), radii[j]) - distinct.begin();
            totals[j] += weight * values[static_cast<std::size_t>(pos)];
        }
        side.per_c.push_back(side.prefactor * weight * values.back());
        side.modes_per_c.push_back(static_cast<std::int64_t>(integral.coeffs().size()));
    }
    for (std::size_t j = 0; j < bands.size(); ++j) side.shells.push_back({bands[j], side.prefactor * totals[j]});

    const ComplexVal final_total = side.shells.back().total;
    const double scale = std::max(std::abs(final_total), 1e-300);
    std::size_t used = side.shells.size() - 1;
    for (std::size_t j = 0; j + 1 < side.shells.size(); ++j) {
        bool quiet = true;
        int seen = 0;
        for (std::size_t m = j + 1; m < side.shells.size() && seen < opts.shells_required; ++m, ++seen) {
            if (std::abs(side.shells[m].total - side.shells[m - 1].total) > opts.shell_tol * scale) quiet = false;
        }
        if (quiet && seen == opts.shells_required) {
            used = j;
            break;
        }
    }
    side.value = side.shells[used].total;
    side.band_used = side.shells[used].band;
    for (std::size_t m = used + 1; m < side.shells.size(); ++m)
        side.tail_estimate += std::abs(side.shells[m].total - side.shells[m - 1].total);
    return side;
}

}  // namespace quadpair
