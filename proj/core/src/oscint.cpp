#include "quadpair/oscint.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "quadpair/delta.hpp"
#include "quadpair/errors.hpp"
#include "quadpair/parallel.hpp"

namespace quadpair {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double cube_bound(const FormPair& pair) {
    return std::max(std::fabs(pair.psi1_min_on_cube()), std::fabs(pair.psi1_max_on_cube()));
}

ComplexVal phase(double t) {
    t -= std::round(t);
    return {std::cos(kTwoPi * t), std::sin(kTwoPi * t)};
}

}  // namespace

IntegralParams::IntegralParams(FormPair pair_, std::int64_t q_, double c_, double B_, Vec4 w_)
    : pair(std::move(pair_)), q(q_), c(c_), B(B_), w(w_) {
    if (q < 1) throw DomainError("I_{q,c} needs q >= 1");
    if (!(c > 0.0)) throw DomainError("I_{q,c} needs c > 0");
    if (!(B > 0.0)) throw DomainError("I_{q,c} needs B > 0");
}

double IntegralParams::Q() const { return B / std::sqrt(static_cast<double>(q)); }
double IntegralParams::x() const { return c / Q(); }
double IntegralParams::xi(int i) const {
    return B * static_cast<double>(w[static_cast<std::size_t>(i)]) / (static_cast<double>(q) * c);
}
bool IntegralParams::vanishes() const { return x() > std::max(1.0, 2.0 * cube_bound(pair)); }

std::int64_t integral_c_max(const FormPair& pair, std::int64_t q, double B) {
    double Q = B / std::sqrt(static_cast<double>(q));
    return static_cast<std::int64_t>(std::floor(Q * std::max(1.0, 2.0 * cube_bound(pair))));
}

HProfile::HProfile(double x, double lo, double hi) : x_(x), lo_(lo) {
    if (!(x > 0.0) || !(hi > lo)) throw DomainError("HProfile needs x > 0 and lo < hi");
    ds_ = x / 1000.0;
    double n = std::ceil((hi - lo) / ds_);
    if (n > 2e7) {
        n = 2e7;
        ds_ = (hi - lo) / n;
    }
    auto count = static_cast<std::size_t>(n) + 1;
    value_.resize(count);
    slope_.resize(count);
    for (std::size_t j = 0; j < count; ++j) {
        double s = lo + ds_ * static_cast<double>(j);
        value_[j] = h_function(x, s);
        slope_[j] = h_function_dy(x, s);
    }
}

double HProfile::operator()(double s) const {
    double u = (s - lo_) / ds_;
    if (u < 0.0 || u >= static_cast<double>(value_.size() - 1)) return h_function(x_, s);
    auto j = static_cast<std::size_t>(u);
    double t = u - static_cast<double>(j);
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t, h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * value_[j] + h10 * ds_ * slope_[j] + h01 * value_[j + 1] + h11 * ds_ * slope_[j + 1];
}

IntegralResult i_qc(const IntegralParams& params, const QuadratureOptions& opts) {
    IntegralResult result;
    if (params.vanishes()) {
        result.converged = true;
        return result;
    }
    using rule = boost::math::quadrature::gauss<double, 8>;
    const auto& abscissa = rule::abscissa();
    const auto& weights = rule::weights();
    const double x = params.x();
    const HProfile profile(x, params.pair.psi1_min_on_cube() - 1e-9, params.pair.psi1_max_on_cube() + 1e-9);

    ComplexVal previous{};
    bool have_previous = false;
    for (std::int64_t panels = 2;; panels *= 2) {
        const std::int64_t n = panels * 8;
        const std::int64_t cost = n * n * n * n;
        if (result.evaluations + cost > opts.budget) break;

        std::vector<double> y, wt;
        for (std::int64_t p = 0; p < panels; ++p) {
            double lo = -1.0 + 2.0 * static_cast<double>(p) / static_cast<double>(panels);
            double half = 1.0 / static_cast<double>(panels);
            double mid = lo + half;
            for (std::size_t k = 0; k < abscissa.size(); ++k) {
                y.push_back(mid - half * abscissa[k]);
                wt.push_back(half * weights[k]);
                y.push_back(mid + half * abscissa[k]);
                wt.push_back(half * weights[k]);
            }
        }
        std::array<std::vector<ComplexVal>, 4> f;
        std::array<std::vector<double>, 4> s;
        for (int i = 0; i < 4; ++i) {
            auto& fi = f[static_cast<std::size_t>(i)];
            auto& si = s[static_cast<std::size_t>(i)];
            const double a = static_cast<double>(params.pair.a()[static_cast<std::size_t>(i)]);
            for (std::size_t j = 0; j < y.size(); ++j) {
                fi.push_back(wt[j] * weight_profile(y[j]) * phase(-params.xi(i) * y[j]));
                si.push_back(a * y[j] * y[j]);
            }
        }
        std::vector<ComplexVal> partial(static_cast<std::size_t>(n));
        parallel_blocks(n, [&](std::int64_t j1) {
            ComplexVal acc{};
            const auto u1 = static_cast<std::size_t>(j1);
            for (std::size_t j2 = 0; j2 < y.size(); ++j2) {
                for (std::size_t j3 = 0; j3 < y.size(); ++j3) {
                    const ComplexVal g = f[0][u1] * f[1][j2] * f[2][j3];
                    const double s123 = s[0][u1] + s[1][j2] + s[2][j3];
                    ComplexVal inner{};
                    for (std::size_t j4 = 0; j4 < y.size(); ++j4) inner += f[3][j4] * profile(s123 + s[3][j4]);
                    acc += g * inner;
                }
            }
            partial[u1] = acc;
        });
        ComplexVal estimate = std::accumulate(partial.begin(), partial.end(), ComplexVal{});
        result.evaluations += cost;
        result.nodes_per_axis = n;
        result.value = estimate;
        if (have_previous) {
            result.last_change = std::abs(estimate - previous);
            if (result.last_change < opts.tol) {
                result.converged = true;
                return result;
            }
        }
        previous = estimate;
        have_previous = true;
    }
    if (!have_previous) throw BudgetExhausted("i_qc budget below the coarsest grid");
    return result;
}

ComplexVal BatchResult::at(const Vec4& v) const {
    std::int64_t side = 2 * radius + 1;
    std::int64_t index = 0;
    for (auto vi : v) {
        if (vi < -radius || vi > radius) throw DomainError("w outside the batch box");
        index = index * side + (vi + radius);
    }
    return values[static_cast<std::size_t>(index)];
}

BatchResult i_qc_batch(const FormPair& pair, std::int64_t q, double c, double B, std::int64_t radius,
                       const QuadratureOptions& opts) {
    if (radius < 0) throw DomainError("batch radius must be >= 0");
    const IntegralParams base(pair, q, c, B, Vec4{0, 0, 0, 0});
    BatchResult result;
    result.radius = radius;
    const std::int64_t side = 2 * radius + 1;
    const std::int64_t box = side * side * side * side;
    for (std::int64_t idx = 0; idx < box; ++idx) {
        Vec4 v{};
        std::int64_t rest = idx;
        for (int i = 3; i >= 0; --i) {
            v[static_cast<std::size_t>(i)] = rest % side - radius;
            rest /= side;
        }
        result.w.push_back(v);
    }
    result.values.assign(static_cast<std::size_t>(box), ComplexVal{});
    if (base.vanishes()) {
        result.converged = true;
        return result;
    }
    const double x = base.x();
    const double step_xi = B / (static_cast<double>(q) * c);
    std::int64_t spent = 0;
    bool have_previous = false;
    for (std::int64_t m = 16;; m *= 2) {
        const std::int64_t interior = m - 1;
        const std::int64_t cost = interior * interior * interior * interior;
        if (spent + cost > opts.budget) break;
        const double hy = 2.0 / static_cast<double>(m);
        const auto nj = static_cast<std::size_t>(interior);
        const auto ns = static_cast<std::size_t>(side);
        std::vector<double> y(nj), prof(nj);
        for (std::size_t j = 0; j < nj; ++j) {
            y[j] = -1.0 + hy * static_cast<double>(j + 1);
            prof[j] = weight_profile(y[j]);
        }
        // E[j][w] = e(-xi_w y_j)
        std::vector<ComplexVal> E(nj * ns);
        for (std::size_t j = 0; j < nj; ++j)
            for (std::size_t k = 0; k < ns; ++k)
                E[j * ns + k] = phase(-step_xi * static_cast<double>(static_cast<std::int64_t>(k) - radius) * y[j]);
        std::array<std::vector<double>, 4> s;
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < nj; ++j) s[i].push_back(static_cast<double>(pair.a()[i]) * y[j] * y[j]);
        }
        const std::size_t cube3 = ns * ns * ns;
        std::vector<std::vector<ComplexVal>> partial(nj);
        parallel_blocks(interior, [&](std::int64_t b) {
            const auto j1 = static_cast<std::size_t>(b);
            std::vector<ComplexVal> C(cube3);
            std::vector<ComplexVal> Bw(ns * ns);
            std::vector<ComplexVal> A(ns);
            for (std::size_t j2 = 0; j2 < nj; ++j2) {
                std::fill(Bw.begin(), Bw.end(), ComplexVal{});
                for (std::size_t j3 = 0; j3 < nj; ++j3) {
                    std::fill(A.begin(), A.end(), ComplexVal{});
                    const double pre = prof[j1] * prof[j2] * prof[j3];
                    const double s123 = s[0][j1] + s[1][j2] + s[2][j3];
                    for (std::size_t j4 = 0; j4 < nj; ++j4) {
                        double g = pre * prof[j4] * h_function(x, s123 + s[3][j4]);
                        if (g == 0.0) continue;
                        for (std::size_t k4 = 0; k4 < ns; ++k4) A[k4] += g * E[j4 * ns + k4];
                    }
                    for (std::size_t k3 = 0; k3 < ns; ++k3)
                        for (std::size_t k4 = 0; k4 < ns; ++k4) Bw[k3 * ns + k4] += E[j3 * ns + k3] * A[k4];
                }
                for (std::size_t k2 = 0; k2 < ns; ++k2)
                    for (std::size_t r = 0; r < ns * ns; ++r) C[k2 * ns * ns + r] += E[j2 * ns + k2] * Bw[r];
            }
            std::vector<ComplexVal> out(ns * cube3);
            for (std::size_t k1 = 0; k1 < ns; ++k1)
                for (std::size_t r = 0; r < cube3; ++r) out[k1 * cube3 + r] = E[j1 * ns + k1] * C[r];
            partial[j1] = std::move(out);
        });
        std::vector<ComplexVal> values(static_cast<std::size_t>(box));
        const double scale = hy * hy * hy * hy;
        for (const auto& part : partial)
            for (std::size_t r = 0; r < values.size(); ++r) values[r] += part[r];
        for (auto& v : values) v *= scale;
        spent += cost;
        result.nodes_per_axis = interior;
        if (have_previous) {
            double change = 0.0;
            for (std::size_t r = 0; r < values.size(); ++r) change = std::max(change, std::abs(values[r] - result.values[r]));
            result.last_change = change;
            result.values = std::move(values);
            if (change < opts.tol) {
                result.converged = true;
                return result;
            }
        } else {
            result.values = std::move(values);
        }
        have_previous = true;
    }
    if (!have_previous) throw BudgetExhausted("i_qc_batch budget below the coarsest grid");
    return result;
}

DecayReport decay_report(const FormPair& pair, std::int64_t q, double B, const std::vector<std::int64_t>& c_grid,
                         std::int64_t w_max) {
    static const std::array<Vec4, 4> directions{{{1, 0, 0, 0}, {0, 0, 0, 1}, {1, 1, 1, 1}, {1, -1, 2, 0}}};
    DecayReport report;
    for (std::int64_t c : c_grid) {
        if (c < 1) throw DomainError("decay_report needs c >= 1");
        const std::int64_t q1 = gcd64(c, q);
        const std::int64_t q2 = q / q1;
        const std::int64_t t = c / q1;
        const double dc = 1e-3 * static_cast<double>(c);
        const SpectralIntegral mid(pair, q, static_cast<double>(c), B);
        if (mid.vanishes()) continue;
        const SpectralIntegral up(pair, q, static_cast<double>(c) + dc, B);
        const SpectralIntegral down(pair, q, static_cast<double>(c) - dc, B);

        // Per-axis factors are shared between many w, so keep them by (axis, w_i).
        struct Cache {
            const SpectralIntegral& integral;
            std::map<std::pair<int, std::int64_t>, std::vector<ComplexVal>> table;
            ComplexVal eval(const Vec4& w) {
                std::array<const std::vector<ComplexVal>*, 4> f{};
                for (int i = 0; i < 4; ++i) {
                    auto key = std::make_pair(i, w[static_cast<std::size_t>(i)]);
                    auto it = table.find(key);
                    if (it == table.end()) {
                        double xi = integral.B() * static_cast<double>(key.second) / integral.modulus();
                        it = table.emplace(key, integral.axis_factors(
                                                    static_cast<double>(integral.pair().a()[static_cast<std::size_t>(i)]), xi))
                                 .first;
                    }
                    f[static_cast<std::size_t>(i)] = &it->second;
                }
                ComplexVal total{};
                for (std::size_t k = 0; k < integral.coeffs().size(); ++k)
                    total += integral.coeffs()[k] * (*f[0])[k] * (*f[1])[k] * (*f[2])[k] * (*f[3])[k];
                return total;
            }
        };
        Cache cm{mid, {}}, cu{up, {}}, cd{down, {}};
        for (const auto& d : directions) {
            for (std::int64_t m = 1; m <= w_max; ++m) {
                Vec4 w{}, wn{};
                double norm2 = 0.0;
                for (std::size_t i = 0; i < 4; ++i) {
                    w[i] = d[i] * m;
                    wn[i] = -w[i];
                    norm2 += static_cast<double>(w[i] * w[i]);
                }
                DecayRow row{};
                row.c = c;
                row.q1 = q1;
                row.t = t;
                row.w = w;
                row.norm_w = std::sqrt(norm2);
                row.abs_I = std::abs(cm.eval(w));
                const double tq = static_cast<double>(q1 * q1) * static_cast<double>(q2) / B;
                row.ref_value = tq * static_cast<double>(t) / row.norm_w;
                row.ratio_value = row.abs_I / row.ref_value;
                // dI/dt = q1 dI/dc
                row.abs_dI_dt = std::abs(cu.eval(w) - cd.eval(w)) / (2.0 * dc) * static_cast<double>(q1);
                row.abs_dI_dt_neg = std::abs(cu.eval(wn) - cd.eval(wn)) / (2.0 * dc) * static_cast<double>(q1);
                row.ref_derivative = tq / row.norm_w;
                row.ratio_derivative = row.abs_dI_dt / row.ref_derivative;
                report.max_ratio_value = std::max(report.max_ratio_value, row.ratio_value);
                report.max_ratio_derivative = std::max(report.max_ratio_derivative, row.ratio_derivative);
                report.rows.push_back(row);
            }
        }
    }
    return report;
}

}  // namespace quadpair
