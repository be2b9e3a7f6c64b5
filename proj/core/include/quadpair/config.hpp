#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "quadpair/forms.hpp"

namespace quadpair {

enum class Experiment { verify, count, charsum, delta_check, tq_bound, lemma41_check, sieve_assembly, decay_report };
std::string to_string(Experiment e);
Experiment parse_experiment(const std::string& name);

enum class PPolicy { fixed, cube_root };

/**
 * One experiment run. Loaded from an INI-style file (sections, key = value, arrays in brackets);
 * docs/config.md lists every key.
 */
struct ExperimentConfig {
    FormPair pair = FormPair::canonical();
    Experiment experiment = Experiment::verify;
    std::vector<std::int64_t> B_grid;
    std::vector<std::int64_t> q_list;
    PPolicy p_policy = PPolicy::cube_root;
    std::int64_t P = 0;
    std::map<std::string, double> tolerances;
    std::uint64_t seed = 1;
    std::string output_path;

    std::vector<double> Q_list;
    /// delta-check: |n| up to this (0 means Q^2 for each Q).
    std::int64_t n_range = 0;
    std::vector<std::int64_t> c_list;
    std::vector<Vec4> w_list;
    /// charsum: brute, closed or crt.
    std::string method = "brute";
    /// count: labels to emit (M, Mstar, Tq, Nproxy, isotropic).
    std::vector<std::string> labels;
    /// Partial-sum scan length and decay-report multiples of each w direction.
    std::int64_t X = 20;
    std::int64_t w_max = 4;
    /// Random w per prime in the Weil-bound sweep.
    std::int64_t samples = 50;
    /// Largest prime in the Weil-bound sweep.
    std::int64_t p_max = 60;

    /// tolerances[key] if present, else fallback.
    double tolerance(const std::string& key, double fallback) const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// "[1, -2, 3]" -> {1, -2, 3}; nested "[[..], [..]]" is split by parse_int_rows.
std::vector<std::int64_t> parse_int_array(const std::string& text);
std::vector<double> parse_real_array(const std::string& text);
std::vector<std::vector<std::int64_t>> parse_int_rows(const std::string& text);

/// Throws PreconditionError unless every q in the list is odd, squarefree and coprime to 2 alpha D.
void require_admissible_list(const FormPair& pair, const std::vector<std::int64_t>& q_list);
bool is_admissible(const FormPair& pair, std::int64_t q);

}  // namespace quadpair
