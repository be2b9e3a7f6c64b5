#include "quadpair/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <random>

#include "quadpair/charsum.hpp"
#include "quadpair/counting.hpp"
#include "quadpair/delta.hpp"
#include "quadpair/errors.hpp"
#include "quadpair/modular.hpp"
#include "quadpair/oscint.hpp"
#include "quadpair/poisson.hpp"

namespace quadpair {

namespace {

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

Record make_record(const std::string& experiment, std::optional<double> B, std::optional<std::int64_t> q) {
    Record r;
    r.experiment = experiment;
    r.B = B;
    r.q_or_P = q;
    return r;
}

std::vector<std::int64_t> odd_primes_up_to(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = 3; p <= n; p += 2)
        if (is_prime(static_cast<std::uint64_t>(p))) out.push_back(p);
    return out;
}

double tq_reference(double B, double q) {
    return B * B / std::pow(q, 1.5) + q * B + std::pow(B, 1.5) / std::pow(q, 0.25);
}

std::int64_t sieve_P(const ExperimentConfig& config, std::int64_t B) {
    if (config.p_policy == PPolicy::fixed) return config.P;
    return static_cast<std::int64_t>(std::ceil(std::cbrt(static_cast<double>(B)) - 1e-12));
}

// c from about Q/2 upward, doubling, while I_{q,c} can be nonzero.
std::vector<std::int64_t> default_decay_c_grid(const FormPair& pair, std::int64_t q, double B) {
    const double Q = B / std::sqrt(static_cast<double>(q));
    const std::int64_t c_max = integral_c_max(pair, q, B);
    std::vector<std::int64_t> grid;
    for (auto c = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(Q / 2.0))); c <= c_max; c *= 2)
        grid.push_back(c);
    return grid;
}

// The CRT route splits off the part of qc belonging to its smallest prime.
CharSumValue charsum_crt(const FormPair& pair, std::int64_t q, std::int64_t c, const Vec4& w) {
    auto primes = factorize(static_cast<std::uint64_t>(q * c));
    if (primes.size() < 2) return s_qc_brute(CharSumParams(pair, q, c, w));
    auto p = static_cast<std::int64_t>(primes.front());
    std::int64_t q1 = q % p == 0 ? p : 1;
    std::int64_t c1 = 1;
    for (std::int64_t rest = c; rest % p == 0; rest /= p) c1 *= p;
    auto check = s_qc_crt(pair, q1, c1, q / q1, c / c1, w);
    return check.composed;
}

void check_constant(Report& report, const ConstantsTable& constants, const std::string& name, double measured,
                    std::optional<std::int64_t> q = std::nullopt) {
    Record r = make_record(report.experiment + ":" + name, std::nullopt, q);
    r.value_re = measured;
    r.bound = (1.0 + kConstantSlack) * constants.value(name);
    r.ratio = measured / constants.value(name);
    report.records.push_back(r);
    report.summary[name] = measured;
    report.check(constants.admits(name, measured), name, measured, *r.bound);
}

}  // namespace

namespace measure {

double weil_constant(const FormPair& pair, std::int64_t p_max, std::int64_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double best = 0.0;
    for (auto p : odd_primes_up_to(p_max)) {
        if (pair.divides_2alphaD(p)) continue;
        std::uniform_int_distribution<std::int64_t> coord(-p, p);
        for (std::int64_t s = 0; s < samples; ++s) {
            Vec4 w{coord(rng), coord(rng), coord(rng), coord(rng)};
            best = std::max(best, weil_ratio(pair, p, w));
        }
    }
    return best;
}

double spr_constant(const FormPair& pair, std::int64_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double best = 0.0;
    for (std::int64_t p : {11, 13}) {
        if (pair.divides_2alphaD(p)) continue;
        for (int r : {1, 2}) {
            std::uniform_int_distribution<std::int64_t> coord(0, ipow(p, r + 1) - 1);
            for (std::int64_t s = 0; s < samples; ++s) {
                Vec4 w{coord(rng), coord(rng), coord(rng), coord(rng)};
                best = std::max(best, spr_ratio(pair, p, r, w));
            }
        }
    }
    return best;
}

double h_constant() {
    double best = 0.0;
    for (int i = 0; i <= 200; ++i) {
        double x = 0.01 * std::pow(200.0, i / 200.0);
        for (int j = 0; j <= 400; ++j) {
            double y = -2.0 + 0.01 * j;
            best = std::max(best, x * std::fabs(h_function(x, y)));
        }
    }
    return best;
}

double zero_frequency_constant(const FormPair& pair, const std::vector<std::int64_t>& q_list, double B) {
    double best = 0.0;
    for (auto q : q_list) {
        for (std::int64_t c = 1; c <= integral_c_max(pair, q, B); ++c) {
            SpectralIntegral integral(pair, q, static_cast<double>(c), B);
            best = std::max(best, std::abs(integral.at(Vec4{0, 0, 0, 0})));
        }
    }
    return best;
}

double scan_q_constant(const FormPair& pair, std::int64_t q, const std::vector<Vec4>& ws, std::int64_t X_max) {
    double best = 0.0;
    for (const auto& w : ws)
        for (const auto& row : partial_sum_scan(pair, q, w, X_max, ScanMode::q_divides_c)) best = std::max(best, row.ratio);
    return best;
}

const std::vector<Vec4>& default_scan_ws() {
    static const std::vector<Vec4> ws{{0, 0, 0, 0}, {1, 0, 0, 0}, {1, 1, 1, 1}, {1, 2, 3, 4}, {1, 2, 3, 0}};
    return ws;
}

double scan_isotropic_constant(const FormPair& pair, const Vec4& w, std::int64_t X_max) {
    double best = 0.0;
    for (const auto& row : partial_sum_scan(pair, 1, w, X_max, ScanMode::coprime_part, 1)) best = std::max(best, row.ratio);
    return best;
}

double decay_constant(const FormPair& pair, std::int64_t q, double B, std::int64_t w_max) {
    auto report = decay_report(pair, q, B, default_decay_c_grid(pair, q, B), w_max);
    return std::max(report.max_ratio_value, report.max_ratio_derivative);
}

double tq_constant(const FormPair& pair, const std::vector<std::int64_t>& B_grid, const std::vector<std::int64_t>& q_list) {
    double best = 0.0;
    for (auto B : B_grid) {
        auto zeros = enumerate_psi1_zeros(pair, B);
        for (auto q : q_list) {
            double v = t_q(pair, q, B, zeros);
            best = std::max(best, std::fabs(v) / tq_reference(static_cast<double>(B), static_cast<double>(q)));
        }
    }
    return best;
}

double sieve_constant(const FormPair& pair, const std::vector<std::int64_t>& B_grid) {
    double best = 0.0;
    for (auto B : B_grid) {
        auto P = static_cast<std::int64_t>(std::ceil(std::cbrt(static_cast<double>(B)) - 1e-12));
        auto d = sieve_decompose(pair, B, P);
        best = std::max(best, d.mstar / (d.majorant_rhs + d.zero_term));
    }
    return best;
}

double isotropic_growth_constant(const FormPair& pair, const std::vector<std::int64_t>& R_list) {
    double best = 0.0;
    for (auto R : R_list) {
        double small = static_cast<double>(count_isotropic_w(pair, R));
        double large = static_cast<double>(count_isotropic_w(pair, 2 * R));
        if (small > 0.0) best = std::max(best, large / (small * std::pow(2.0, 2.2)));
    }
    return best;
}

}  // namespace measure

Report run_delta_check(const ExperimentConfig& config) {
    Report report;
    report.experiment = "delta-check";
    const double tol = config.tolerance("delta_abs", 1e-9);
    std::vector<double> Qs = config.Q_list.empty() ? std::vector<double>{5, 10, 20, 40} : config.Q_list;
    for (double Q : Qs) {
        Timer timer;
        DeltaKernel kernel(Q);
        auto range = config.n_range > 0 ? config.n_range : static_cast<std::int64_t>(std::floor(Q * Q));
        double worst = 0.0;
        for (std::int64_t n = -range; n <= range; ++n) {
            double err = std::fabs(kernel.delta_reconstruct(n) - (n == 0 ? 1.0 : 0.0));
            worst = std::max(worst, err);
        }
        Record r = make_record("delta", Q, range);
        r.value_re = worst;
        r.bound = tol;
        r.ratio = tol > 0 ? worst / tol : worst;
        r.seconds = timer.seconds();
        report.records.push_back(r);
        report.check(worst <= tol, "delta Q=" + format_real(Q), worst, tol);
    }
    return report;
}

namespace {

Report verify_gauss(const ExperimentConfig& config) {
    Report report;
    report.experiment = "verify";
    const double tol = config.tolerance("gauss_rel", 1e-6);
    Timer timer;
    double worst = 0.0;
    for (std::int64_t p : {3, 5, 7, 11}) {
        for (int r = 1; r <= 3 && ipow(p, r) <= 1331; ++r) {
            for (std::int64_t m : {1, 2}) {
                for (std::int64_t g : {1, 2, 3}) {
                    if ((2 * m * g) % p == 0) continue;
                    auto closed = quad_gauss_sum_closed(m, g, p, r);
                    auto brute = quad_gauss_sum_brute(m, g, p, r);
                    worst = std::max(worst, std::abs(closed - brute) / std::max(std::abs(brute), 1.0));
                }
            }
        }
    }
    static const std::array<Coeffs4, 3> forms{{{1, 1, 1, 1}, {1, 2, 1, 2}, {1, 2, 3, 1}}};
    for (std::int64_t p : {3, 5, 7}) {
        for (int r : {1, 2}) {
            for (const auto& coeffs : forms) {
                DiagonalForm phi(coeffs);
                for (std::int64_t m : {1, 2}) {
                    if (mod_reduce(2 * m * static_cast<i128>(phi.product()), p) == 0) continue;
                    for (int bits = 0; bits < 16; ++bits) {
                        Vec4 w{bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1};
                        auto closed = exp_sum_quad4(phi, m, w, p, r);
                        auto brute = exp_sum_quad4_brute(phi, m, w, p, r);
                        worst = std::max(worst, std::abs(closed - brute) / std::max(std::abs(brute), 1.0));
                    }
                }
            }
        }
    }
    Record rec = make_record("verify:gauss", std::nullopt, std::nullopt);
    rec.value_re = worst;
    rec.bound = tol;
    rec.ratio = tol > 0 ? worst / tol : worst;
    rec.seconds = timer.seconds();
    report.records.push_back(rec);
    report.check(worst <= tol, "gauss closed vs brute", worst, tol);
    return report;
}

Report verify_s1pr(const FormPair& pair) {
    Report report;
    report.experiment = "verify";
    Timer timer;
    std::int64_t mismatches = 0, cases = 0;
    for (std::int64_t p : {7, 11, 13}) {
        if (mod_reduce(2 * pair.alpha(), p) == 0) continue;
        for (int r : {1, 2}) {
            for (int code = 0; code < 81; ++code) {
                Vec4 w{code % 3, (code / 3) % 3, (code / 9) % 3, (code / 27) % 3};
                auto closed = s_1_pr_closed(pair, p, r, w).value;
                auto brute = s_qc_brute(CharSumParams(pair, 1, ipow(p, r), w)).value;
                ++cases;
                if (std::llround(closed.real()) != std::llround(brute.real()) || std::fabs(brute.imag()) > 0.5) ++mismatches;
            }
        }
    }
    Record rec = make_record("verify:s1pr", std::nullopt, std::nullopt);
    rec.value_re = static_cast<double>(mismatches);
    rec.bound = 0.0;
    rec.ratio = static_cast<double>(cases);
    rec.seconds = timer.seconds();
    report.records.push_back(rec);
    report.check(mismatches == 0, "S_{1,p^r} closed vs brute mismatches", static_cast<double>(mismatches), 0.0);
    return report;
}

/// Coprime splits (q1, c1, q2, c2) checked for multiplicativity; the q = 35 cases need a pair for which 5 and 7
/// are admissible and run on crt_pair_35().
const std::vector<std::array<std::int64_t, 4>>& crt_splits_canonical() {
    static const std::vector<std::array<std::int64_t, 4>> splits{
        {1, 2, 1, 9}, {1, 4, 1, 3}, {1, 5, 1, 7}, {11, 1, 1, 2}, {11, 1, 1, 3}, {11, 1, 13, 1}, {1, 11, 13, 1},
        {11, 2, 13, 1}, {11, 1, 1, 4}, {13, 1, 1, 5}};
    return splits;
}

const std::vector<std::array<std::int64_t, 4>>& crt_splits_35() {
    static const std::vector<std::array<std::int64_t, 4>> splits{{5, 1, 7, 1}, {5, 2, 7, 1}, {5, 1, 7, 3}};
    return splits;
}

FormPair crt_pair_35() { return FormPair({1, -2, -2, -1}, {1, 1, -1, 1}); }

Report verify_crt(const ExperimentConfig& config) {
    Report report;
    report.experiment = "verify";
    const double tol = config.tolerance("crt_rel", 1e-5);
    Timer timer;
    double worst = 0.0;
    std::int64_t count = 0;
    auto run = [&](const FormPair& pair, const std::vector<std::array<std::int64_t, 4>>& splits) {
        for (const auto& s : splits) {
            for (const Vec4& w : {Vec4{0, 0, 0, 0}, Vec4{1, 2, 3, 4}, Vec4{1, 2, 3, 0}}) {
                auto check = s_qc_crt(pair, s[0], s[1], s[2], s[3], w);
                worst = std::max(worst, check.rel_error);
                ++count;
            }
        }
    };
    run(config.pair, crt_splits_canonical());
    run(crt_pair_35(), crt_splits_35());
    Record rec = make_record("verify:crt", std::nullopt, count);
    rec.value_re = worst;
    rec.bound = tol;
    rec.ratio = tol > 0 ? worst / tol : worst;
    rec.seconds = timer.seconds();
    report.records.push_back(rec);
    report.check(worst <= tol, "CRT multiplicativity", worst, tol);
    return report;
}

}  // namespace

Report run_verify(const ExperimentConfig& config, const ConstantsTable& constants) {
    require_admissible_list(config.pair, config.q_list);
    Report report;
    report.experiment = "verify";
    const FormPair& pair = config.pair;

    ExperimentConfig delta_cfg = config;
    if (delta_cfg.Q_list.empty()) delta_cfg.Q_list = {5, 10, 20};
    auto delta = run_delta_check(delta_cfg);
    for (auto& r : delta.records) r.experiment = "verify:" + r.experiment;
    report.append(delta);
    report.append(verify_gauss(config));
    report.append(verify_s1pr(pair));
    report.append(verify_crt(config));

    Timer timer;
    check_constant(report, constants, "C0", measure::weil_constant(pair, config.p_max, config.samples, config.seed));
    check_constant(report, constants, "C1", measure::spr_constant(pair, 10, config.seed));
    check_constant(report, constants, "C_h", measure::h_constant());

    std::vector<std::int64_t> qs = config.q_list;
    if (qs.empty()) {
        for (std::int64_t p = 3; qs.size() < 2; p += 2)
            if (is_prime(static_cast<std::uint64_t>(p)) && is_admissible(pair, p)) qs.push_back(p);
    }
    check_constant(report, constants, "C_scan_q", measure::scan_q_constant(pair, qs.front(),
                                                     config.w_list.empty() ? measure::default_scan_ws() : config.w_list,
                                                     config.X),
                   qs.front());
    // An isotropic w for the canonical pair; other pairs skip the signed scan unless one is configured.
    std::optional<Vec4> iso;
    for (const auto& w : config.w_list)
        if (tilde(pair.psi1()).eval(w) == 0 && w != Vec4{0, 0, 0, 0}) iso = w;
    if (!iso && tilde(pair.psi1()).eval(Vec4{1, 2, 3, 0}) == 0) iso = Vec4{1, 2, 3, 0};
    if (iso) {
        check_constant(report, constants, "C_scan_iso", measure::scan_isotropic_constant(pair, *iso, 30));
    } else {
        report.warnings.push_back("no isotropic w configured; signed partial-sum scan skipped");
    }
    const double B_int = config.B_grid.empty() ? 8.0 : static_cast<double>(config.B_grid.front());
    check_constant(report, constants, "C_I", measure::zero_frequency_constant(pair, qs, B_int));
    check_constant(report, constants, "C2", measure::decay_constant(pair, qs.front(), B_int, config.w_max), qs.front());
    report.summary["bound_checks_seconds"] = timer.seconds();
    return report;
}

Report run_count(const ExperimentConfig& config) {
    Report report;
    report.experiment = "count";
    std::vector<std::string> labels = config.labels.empty() ? std::vector<std::string>{"M", "Mstar"} : config.labels;
    for (const auto& l : labels) {
        if (l != "M" && l != "Mstar" && l != "Tq" && l != "Nproxy" && l != "isotropic")
            throw ConfigError("unknown count label '" + l + "'");
    }
    if (std::find(labels.begin(), labels.end(), "Tq") != labels.end()) require_admissible_list(config.pair, config.q_list);
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    for (auto B : config.B_grid) {
        Timer enum_timer;
        auto zeros = enumerate_psi1_zeros(config.pair, B);
        const double enum_seconds = enum_timer.seconds();
        for (const auto& label : labels) {
            auto emit = [&](double value, std::optional<std::int64_t> q, double seconds) {
                Record r = make_record("count:" + label, static_cast<double>(B), q);
                r.value_re = value;
                r.seconds = seconds;
                report.records.push_back(r);
                series[label + (q ? ":" + std::to_string(*q) : "")].push_back({static_cast<double>(B), value});
            };
            Timer timer;
            if (label == "M") emit(static_cast<double>(count_M(config.pair, B, zeros)), std::nullopt, enum_seconds + timer.seconds());
            if (label == "Mstar") emit(count_M_star(config.pair, B, zeros), std::nullopt, enum_seconds + timer.seconds());
            if (label == "Nproxy") emit(static_cast<double>(count_N_proxy(config.pair, B)), std::nullopt, timer.seconds());
            if (label == "isotropic") emit(static_cast<double>(count_isotropic_w(config.pair, B)), std::nullopt, timer.seconds());
            if (label == "Tq") {
                for (auto q : config.q_list) {
                    Timer tq_timer;
                    emit(t_q(config.pair, q, B, zeros), q, enum_seconds + tq_timer.seconds());
                }
            }
        }
    }
    for (const auto& [name, points] : series) {
        if (points.size() < 3) continue;
        try {
            auto fit = fit_exponent(points);
            report.summary["exponent:" + name] = fit.slope;
            report.summary["exponent_stderr:" + name] = fit.stderr_slope;
            report.warnings.insert(report.warnings.end(), fit.warnings.begin(), fit.warnings.end());
        } catch (const DomainError& e) {
            report.warnings.push_back("exponent fit for " + name + ": " + e.what());
        }
    }
    return report;
}

Report run_tq_bound(const ExperimentConfig& config) {
    Report report;
    report.experiment = "tq-bound";
    const double C_T = config.tolerance("C_T", 10.0);
    if (config.B_grid.empty() || config.q_list.empty()) report.warnings.push_back("empty (B, q) grid: nothing checked");
    double worst = 0.0;
    for (auto B : config.B_grid) {
        if (B > 400) throw ConfigError("tq-bound limited to B <= 400");
        auto zeros = enumerate_psi1_zeros(config.pair, B);
        for (auto q : config.q_list) {
            if (q > 200 || !is_admissible(config.pair, q)) {
                report.warnings.push_back("skipped q = " + std::to_string(q) + " (inadmissible or above 200)");
                continue;
            }
            Timer timer;
            double v = t_q(config.pair, q, B, zeros);
            double ref = tq_reference(static_cast<double>(B), static_cast<double>(q));
            Record r = make_record("tq-bound", static_cast<double>(B), q);
            r.value_re = v;
            r.bound = ref;
            r.ratio = std::fabs(v) / ref;
            r.seconds = timer.seconds();
            report.records.push_back(r);
            worst = std::max(worst, *r.ratio);
            report.check(*r.ratio <= C_T, "T_q ratio B=" + std::to_string(B) + " q=" + std::to_string(q), *r.ratio, C_T);
        }
    }
    report.summary["max_ratio"] = worst;
    return report;
}

Report run_lemma41_check(const ExperimentConfig& config) {
    Report report;
    report.experiment = "lemma41-check";
    require_admissible_list(config.pair, config.q_list);
    const double tol_rel = config.tolerance("lemma41_rel", 0.02);
    for (auto B : config.B_grid) {
        if (B > 12) throw ConfigError("lemma41-check is limited to B <= 12");
        for (auto q : config.q_list) {
            Timer timer;
            const double lhs = t_q(config.pair, q, B);
            PoissonSide side;
            try {
                side = poisson_side_sum(config.pair, q, static_cast<double>(B));
            } catch (const BudgetExhausted& e) {
                report.inconclusive = true;
                report.warnings.push_back(std::string("B=") + std::to_string(B) + " q=" + std::to_string(q) + ": " + e.what());
                continue;
            }
            const double seconds = timer.seconds();
            const double diff = std::abs(side.value - lhs);
            const double allowed = tol_rel * std::max(1.0, std::fabs(lhs)) + side.tail_estimate;
            Record r = make_record("lemma41", static_cast<double>(B), q);
            r.value_re = side.value.real();
            r.value_im = side.value.imag();
            r.bound = lhs;
            r.ratio = diff / std::max(1.0, std::fabs(lhs));
            r.seconds = seconds;
            report.records.push_back(r);
            for (const auto& shell : side.shells) {
                Record s = make_record("lemma41:band", static_cast<double>(B), q);
                s.value_re = shell.total.real();
                s.value_im = shell.total.imag();
                s.bound = shell.band;
                s.ratio = std::abs(shell.total - lhs) / std::max(1.0, std::fabs(lhs));
                report.records.push_back(s);
            }
            // The same sum with prefactor B / q^3 instead of B^2 / q^3.
            Record alt = make_record("lemma41:prefactor-B-over-q3", static_cast<double>(B), q);
            alt.value_re = side.value.real() / static_cast<double>(B);
            alt.bound = lhs;
            alt.ratio = std::abs(side.value / static_cast<double>(B) - lhs) / std::max(1.0, std::fabs(lhs));
            report.records.push_back(alt);
            const std::string key = "B=" + std::to_string(B) + ",q=" + std::to_string(q);
            report.summary["tail_estimate:" + key] = side.tail_estimate;
            report.summary["rel_error:" + key] = *r.ratio;
            report.check(diff <= allowed, "lemma41 " + key, diff, allowed);
        }
    }
    return report;
}

Report run_sieve_assembly(const ExperimentConfig& config, const ConstantsTable& constants) {
    Report report;
    report.experiment = "sieve-assembly";
    std::vector<std::pair<double, double>> points;
    for (auto B : config.B_grid) {
        if (B > 400) throw ConfigError("sieve-assembly limited to B <= 400");
        Timer timer;
        const std::int64_t P = sieve_P(config, B);
        auto zeros = enumerate_psi1_zeros(config.pair, B);
        auto d = sieve_decompose(config.pair, B, P, zeros);
        const double seconds = timer.seconds();
        const double Bd = static_cast<double>(B);
        auto emit = [&](const std::string& name, double value, std::optional<double> bound) {
            Record r = make_record("sieve:" + name, Bd, P);
            r.value_re = value;
            r.bound = bound;
            if (bound && *bound != 0.0) r.ratio = value / *bound;
            r.seconds = seconds;
            report.records.push_back(r);
        };
        const double majorant = d.majorant_rhs + d.zero_term;
        emit("mstar", d.mstar, majorant);
        emit("diagonal", d.diagonal_term, std::nullopt);
        emit("offdiagonal", d.offdiag_term, std::nullopt);
        emit("zero-term", d.zero_term, std::nullopt);
        emit("reference-B^(5/3)", d.mstar, std::pow(Bd, 5.0 / 3.0));
        points.push_back({Bd, d.mstar});
        const double ratio = d.mstar / majorant;
        report.check(ratio <= (1.0 + kConstantSlack) * constants.value("C_sieve"), "sieve ratio B=" + std::to_string(B),
                     ratio, (1.0 + kConstantSlack) * constants.value("C_sieve"));
    }
    if (points.size() >= 3) {
        auto fit = fit_exponent(points);
        report.summary["mstar_exponent"] = fit.slope;
        report.summary["mstar_exponent_stderr"] = fit.stderr_slope;
        const double limit = config.tolerance("mstar_exponent_max", 1.8);
        report.check(fit.slope <= limit, "M* exponent", fit.slope, limit);
    } else {
        report.warnings.push_back("fewer than 3 B values: no exponent fit");
    }
    return report;
}

Report run_decay_report(const ExperimentConfig& config, const ConstantsTable& constants) {
    Report report;
    report.experiment = "decay-report";
    require_admissible_list(config.pair, config.q_list);
    double worst = 0.0, worst_symmetry = 0.0;
    for (auto q : config.q_list) {
        for (auto B : config.B_grid) {
            const double Bd = static_cast<double>(B);
            auto grid = config.c_list.empty() ? default_decay_c_grid(config.pair, q, Bd) : config.c_list;
            Timer timer;
            auto decay = decay_report(config.pair, q, Bd, grid, config.w_max);
            const double seconds = timer.seconds() / std::max<std::size_t>(1, decay.rows.size());
            for (const auto& row : decay.rows) {
                Record v = make_record("decay:c=" + std::to_string(row.c), Bd, q);
                v.w = row.w;
                v.value_re = row.abs_I;
                v.bound = row.ref_value;
                v.ratio = row.ratio_value;
                v.seconds = seconds;
                report.records.push_back(v);
                Record d = make_record("decay-dt:c=" + std::to_string(row.c), Bd, q);
                d.w = row.w;
                d.value_re = row.abs_dI_dt;
                d.value_im = row.abs_dI_dt_neg;
                d.bound = row.ref_derivative;
                d.ratio = row.ratio_derivative;
                report.records.push_back(d);
                worst_symmetry = std::max(worst_symmetry, std::fabs(row.abs_dI_dt - row.abs_dI_dt_neg));
            }
            worst = std::max({worst, decay.max_ratio_value, decay.max_ratio_derivative});
        }
    }
    report.summary["max_ratio"] = worst;
    report.summary["max_conjugation_gap"] = worst_symmetry;
    report.check(worst <= (1.0 + kConstantSlack) * constants.value("C2"), "decay ratio", worst,
                 (1.0 + kConstantSlack) * constants.value("C2"));
    report.check(worst_symmetry <= 1e-6, "t-derivative conjugation symmetry", worst_symmetry, 1e-6);
    return report;
}

std::vector<CharSumRow> run_charsum(const ExperimentConfig& config) {
    require_admissible_list(config.pair, config.q_list);
    if (config.method != "brute" && config.method != "closed" && config.method != "crt")
        throw ConfigError("charsum method must be brute, closed or crt");
    std::vector<std::int64_t> qs = config.q_list.empty() ? std::vector<std::int64_t>{1} : config.q_list;
    std::vector<std::int64_t> cs = config.c_list.empty() ? std::vector<std::int64_t>{1} : config.c_list;
    std::vector<Vec4> ws = config.w_list.empty() ? std::vector<Vec4>{Vec4{0, 0, 0, 0}} : config.w_list;
    std::vector<CharSumRow> rows;
    for (auto q : qs) {
        for (auto c : cs) {
            for (const auto& w : ws) {
                Timer timer;
                CharSumValue v{ComplexVal{}, CharSumParams(config.pair, q, c, w), CharSumMethod::brute};
                if (config.method == "brute") {
                    v = s_qc_brute(CharSumParams(config.pair, q, c, w));
                } else if (config.method == "crt") {
                    v = charsum_crt(config.pair, q, c, w);
                } else {
                    auto primes = factorize(static_cast<std::uint64_t>(c));
                    if (q != 1 || primes.size() != 1) throw PreconditionError("closed form needs q = 1 and c an odd prime power");
                    auto p = static_cast<std::int64_t>(primes.front());
                    int r = 0;
                    for (std::int64_t rest = c; rest > 1; rest /= p) ++r;
                    v = s_1_pr_closed(config.pair, p, r, w);
                }
                rows.push_back({q, c, w, v.value.real(), v.value.imag(), to_string(v.method), timer.seconds()});
            }
        }
    }
    return rows;
}

void write_charsum_csv(std::ostream& out, const std::vector<CharSumRow>& rows, bool with_seconds) {
    out << "q,c,w1,w2,w3,w4,re,im,method,seconds\n";
    for (const auto& r : rows) {
        out << r.q << ',' << r.c << ',' << r.w[0] << ',' << r.w[1] << ',' << r.w[2] << ',' << r.w[3] << ','
            << format_real(r.re) << ',' << format_real(r.im) << ',' << r.method << ','
            << (with_seconds ? format_real(r.seconds) : "") << '\n';
    }
}

Report run_experiment(const ExperimentConfig& config, const ConstantsTable& constants) {
    Report report;
    switch (config.experiment) {
        case Experiment::verify: report = run_verify(config, constants); break;
        case Experiment::count: report = run_count(config); break;
        case Experiment::delta_check: report = run_delta_check(config); break;
        case Experiment::tq_bound: report = run_tq_bound(config); break;
        case Experiment::lemma41_check: report = run_lemma41_check(config); break;
        case Experiment::sieve_assembly: report = run_sieve_assembly(config, constants); break;
        case Experiment::decay_report: report = run_decay_report(config, constants); break;
        case Experiment::charsum: {
            report.experiment = "charsum";
            for (const auto& row : run_charsum(config)) {
                Record r = make_record("charsum:" + row.method, std::nullopt, row.q);
                r.w = row.w;
                r.value_re = row.re;
                r.value_im = row.im;
                r.bound = static_cast<double>(row.c);
                r.seconds = row.seconds;
                report.records.push_back(r);
            }
            break;
        }
    }
    report.experiment = to_string(config.experiment);
    sort_records(report.records);
    return report;
}

ConstantsTable calibrate() {
    const FormPair pair = FormPair::canonical();
    ConstantsTable table;
    table.set("C0", measure::weil_constant(pair, 60, 50, 1),
              "max |S_{p,1}(w)|/p^{3/2}, canonical pair, admissible p <= 60, 50 random w per p, seed 1");
    table.set("C1", measure::spr_constant(pair, 10, 1),
              "max |S_{p,p^r}(w)|/(p^{2r+3/2} gcd(p^r, psi~1(w))), p in {11,13}, r in {1,2}, 10 random w, seed 1");
    table.set("C2", measure::decay_constant(pair, 11, 8.0, 4),
              "max decay-report ratio (value and t-derivative), q = 11, B = 8, c from Q/2 doubling, w multiples 1..4");
    table.set("C_T", measure::tq_constant(pair, {50, 100, 200}, {17, 187, 221}),
              "max |T_q(B)|/(B^2/q^{3/2} + qB + B^{3/2}/q^{1/4}), B in {50,100,200}, q in {17,187,221}");
    table.set("C_sieve", measure::sieve_constant(pair, {50, 64, 100, 125, 216, 343}),
              "max M*(B)/(majorant + zero term), P = ceil(B^{1/3}), B in {50,64,100,125,216,343}");
    table.set("C_h", measure::h_constant(), "max x|h(x,y)|, x log-spaced in [0.01, 2], y step 0.01 in [-2, 2]");
    table.set("C_I", measure::zero_frequency_constant(pair, {11, 13}, 8.0),
              "max |I_{q,c}(0)|, q in {11,13}, B = 8, every c with nonempty support");
    table.set("C_scan_q", measure::scan_q_constant(pair, 11, measure::default_scan_ws(), 20),
              "max sum_{c <= X, q | c} |S_{q,c}(w)| / (q^{3/2} X^3), q = 11, X <= 20, "
              "w in {0, (1,0,0,0), (1,1,1,1), (1,2,3,4), (1,2,3,0)}");
    table.set("C_scan_iso", measure::scan_isotropic_constant(pair, Vec4{1, 2, 3, 0}, 30),
              "max |sum_{c <= X} S_{1,c}(w)| / X^{7/2}, w = (1,2,3,0), X <= 30");
    table.set("C_iso", measure::isotropic_growth_constant(pair, {25, 50, 100}),
              "max count(2R)/(count(R) 2^{2.2}) of isotropic w, R in {25,50,100}");
    return table;
}

}  // namespace quadpair
