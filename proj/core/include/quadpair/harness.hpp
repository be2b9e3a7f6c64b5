#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "quadpair/config.hpp"
#include "quadpair/constants.hpp"
#include "quadpair/report.hpp"

namespace quadpair {

/// Closed-form-vs-brute identities and measured-constant bound checks at the configured scale.
Report run_verify(const ExperimentConfig& config, const ConstantsTable& constants);
/// CountRecord rows for the requested labels over B_grid (q_list feeds Tq, P feeds nothing).
Report run_count(const ExperimentConfig& config);
/// Max |delta_reconstruct(n) - [n = 0]| per Q.
Report run_delta_check(const ExperimentConfig& config);
/// |T_q(B)| against B^2/q^{3/2} + qB + B^{3/2}/q^{1/4}; inadmissible q are skipped with a warning.
Report run_tq_bound(const ExperimentConfig& config);
/// Enumerated T_q(B) against the Poisson-side sum of S_{q,c}(w) I_{q,c}(w).
Report run_lemma41_check(const ExperimentConfig& config);
/// M*(B) against the square-sieve majorant with P from the policy; fitted exponent of M*.
Report run_sieve_assembly(const ExperimentConfig& config, const ConstantsTable& constants);
/// Decay ratios of I_{q,c}(w) (value and t-derivative) for each q and B.
Report run_decay_report(const ExperimentConfig& config, const ConstantsTable& constants);

struct CharSumRow {
    std::int64_t q, c;
    Vec4 w;
    double re, im;
    std::string method;
    double seconds;
};
/// S_{q,c}(w) for every (q, c, w) of the config by the configured method (brute, closed or crt).
std::vector<CharSumRow> run_charsum(const ExperimentConfig& config);
void write_charsum_csv(std::ostream& out, const std::vector<CharSumRow>& rows, bool with_seconds);

/// Dispatches on config.experiment (charsum rows become generic records).
Report run_experiment(const ExperimentConfig& config, const ConstantsTable& constants);

/// Re-measures every recorded constant at the acceptance scale.
ConstantsTable calibrate();

/// Individual constant measurements shared by calibration, verification and the acceptance suite.
namespace measure {
/// max |S_{p,1}(w)| / p^{3/2} over admissible p <= p_max with `samples` random w (entries in [-p, p]) per p.
double weil_constant(const FormPair& pair, std::int64_t p_max, std::int64_t samples, std::uint64_t seed);
/// max spr_ratio over p in {11, 13}, r in {1, 2} and `samples` random w per (p, r).
double spr_constant(const FormPair& pair, std::int64_t samples, std::uint64_t seed);
/// max x |h(x, y)| over x in [0.01, 2], y in [-2, 2].
double h_constant();
/// max |I_{q,c}(0)| over the q list and every c with nonempty support at this B.
double zero_frequency_constant(const FormPair& pair, const std::vector<std::int64_t>& q_list, double B);
/// max ratio of the cumulative sum of |S_{q,c}(w)| over q | c to q^{3/2} X^3, X <= X_max, over the w list.
double scan_q_constant(const FormPair& pair, std::int64_t q, const std::vector<Vec4>& ws, std::int64_t X_max);
/// w used by the q | c scan when none are configured.
const std::vector<Vec4>& default_scan_ws();
/// max |sum_{c <= X} S_{1,c}(w)| / X^{7/2}, X <= X_max, for isotropic w.
double scan_isotropic_constant(const FormPair& pair, const Vec4& w, std::int64_t X_max);
/// max of both ratio columns of the decay report.
double decay_constant(const FormPair& pair, std::int64_t q, double B, std::int64_t w_max);
/// max |T_q(B)| / (B^2/q^{3/2} + qB + B^{3/2}/q^{1/4}).
double tq_constant(const FormPair& pair, const std::vector<std::int64_t>& B_grid, const std::vector<std::int64_t>& q_list);
/// max M*(B) / (majorant + zero term) with P = ceil(B^{1/3}).
double sieve_constant(const FormPair& pair, const std::vector<std::int64_t>& B_grid);
/// max count(2R) / (count(R) 2^{2.2}) over R in the list.
double isotropic_growth_constant(const FormPair& pair, const std::vector<std::int64_t>& R_list);
}  // namespace measure

}  // namespace quadpair
