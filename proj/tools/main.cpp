#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "quadpair/config.hpp"
#include "quadpair/constants.hpp"
#include "quadpair/errors.hpp"
#include "quadpair/harness.hpp"
#include "quadpair/parallel.hpp"
#include "quadpair/report.hpp"

namespace {

using namespace quadpair;

struct Options {
    std::string config_path;
    std::string out_path;
    std::string constants_path;
    std::string format;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    bool timings = false;

    // Overrides of config entries.
    std::string a, b, B, q, c, w, Q, labels, method;
    std::int64_t n_range = -1;
};

Coeffs4 parse_coeffs(const std::string& text) {
    auto v = parse_int_array(text);
    if (v.size() != 4) throw ConfigError("a form needs 4 coefficients: " + text);
    return {v[0], v[1], v[2], v[3]};
}

ExperimentConfig build_config(const Options& opts, Experiment experiment) {
    ExperimentConfig config = opts.config_path.empty() ? ExperimentConfig{} : load_config(opts.config_path);
    config.experiment = experiment;
    if (!opts.a.empty() || !opts.b.empty()) {
        if (opts.a.empty() || opts.b.empty()) throw ConfigError("--a and --b must be given together");
        config.pair = FormPair(parse_coeffs(opts.a), parse_coeffs(opts.b));
    }
    if (!opts.B.empty()) config.B_grid = parse_int_array(opts.B);
    if (!opts.q.empty()) config.q_list = parse_int_array(opts.q);
    if (!opts.c.empty()) config.c_list = parse_int_array(opts.c);
    if (!opts.Q.empty()) config.Q_list = parse_real_array(opts.Q);
    if (!opts.w.empty()) {
        config.w_list.clear();
        for (const auto& row : parse_int_rows(opts.w)) {
            if (row.size() != 4) throw ConfigError("each w needs 4 entries");
            config.w_list.push_back({row[0], row[1], row[2], row[3]});
        }
    }
    if (!opts.labels.empty()) {
        config.labels.clear();
        std::stringstream ss(opts.labels);
        for (std::string l; std::getline(ss, l, ',');)
            if (!l.empty()) config.labels.push_back(l);
    }
    if (!opts.method.empty()) config.method = opts.method;
    if (opts.n_range >= 0) config.n_range = opts.n_range;
    if (opts.seed) config.seed = *opts.seed;
    if (!opts.out_path.empty()) config.output_path = opts.out_path;
    return config;
}

bool wants_json(const Options& opts, const std::string& path) {
    if (!opts.format.empty()) return opts.format == "json";
    return std::filesystem::path(path).extension() == ".json";
}

template <class Writer>
void emit(const std::string& path, Writer&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output '" + path + "'");
    write(out);
}

void print_summary(const Report& report) {
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    for (const auto& [k, v] : report.summary) std::cerr << k << " = " << format_real(v) << '\n';
    for (const auto& f : report.failures) std::cerr << "FAIL " << f << '\n';
    std::cerr << report.experiment << ": "
              << (report.pass() ? "pass" : report.failures.empty() ? "inconclusive" : "fail") << '\n';
}

int run(const Options& opts, Experiment experiment) {
    if (opts.threads > 0) set_thread_count(opts.threads);
    auto config = build_config(opts, experiment);
    const std::string out = config.output_path;
    if (experiment != Experiment::tq_bound) require_admissible_list(config.pair, config.q_list);
    if (experiment == Experiment::charsum && !wants_json(opts, out)) {
        auto rows = run_charsum(config);
        emit(out, [&](std::ostream& os) { write_charsum_csv(os, rows, opts.timings); });
        return 0;
    }
    const bool needs_constants = experiment == Experiment::verify || experiment == Experiment::sieve_assembly ||
                                 experiment == Experiment::decay_report;
    ConstantsTable constants;
    if (needs_constants)
        constants = ConstantsTable::load(opts.constants_path.empty() ? default_constants_path() : opts.constants_path);
    Report report = run_experiment(config, constants);
    emit(out, [&](std::ostream& os) {
        if (wants_json(opts, out))
            write_json(os, report, opts.timings);
        else
            write_csv(os, report, opts.timings);
    });
    print_summary(report);
    return exit_code(report);
}

int run_calibrate(const Options& opts) {
    if (opts.threads > 0) set_thread_count(opts.threads);
    auto table = calibrate();
    const std::string path = opts.out_path.empty() ? default_constants_path() : opts.out_path;
    table.save(path);
    for (const auto& [name, c] : table.entries()) std::cerr << name << " = " << format_real(c.value) << '\n';
    std::cerr << "wrote " << path << '\n';
    return 0;
}

void add_common(CLI::App* sub, Options& opts) {
    sub->add_option("--config", opts.config_path, "Experiment config file")->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_path, "Output path (CSV, or JSON for a .json path); stdout if omitted");
    sub->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", opts.seed, "Seed for random w draws");
    sub->add_option("--threads", opts.threads, "Worker threads (default: QUADPAIR_THREADS or all cores)");
    sub->add_option("--constants", opts.constants_path, "Measured-constants file");
    sub->add_flag("--timings", opts.timings, "Fill the seconds column");
    sub->add_option("--a", opts.a, "Coefficients of the first form, e.g. [1,2,-3,-5]");
    sub->add_option("--b", opts.b, "Coefficients of the second form");
    sub->add_option("--B", opts.B, "Box sizes, e.g. [50,100]");
    sub->add_option("--q", opts.q, "Moduli q, e.g. [11,13]");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Point-counting experiments for pairs of diagonal quaternary quadratic forms"};
    app.require_subcommand(1);
    Options opts;
    struct Entry {
        const char* name;
        Experiment experiment;
        const char* help;
    };
    const Entry entries[] = {
        {"verify", Experiment::verify, "Closed-form identities and measured-constant bounds"},
        {"count", Experiment::count, "Counts M, M*, T_q, N proxy or isotropic w over a B grid"},
        {"charsum", Experiment::charsum, "Evaluates S_{q,c}(w)"},
        {"delta-check", Experiment::delta_check, "Reconstruction error of the delta expansion"},
        {"tq-bound", Experiment::tq_bound, "|T_q(B)| against the reference bound"},
        {"lemma41-check", Experiment::lemma41_check, "T_q(B) by enumeration against the Poisson-side sum"},
        {"sieve-assembly", Experiment::sieve_assembly, "M*(B) against the square-sieve majorant"},
        {"decay-report", Experiment::decay_report, "Decay of I_{q,c}(w) and its t-derivative"},
    };
    std::optional<Experiment> chosen;
    for (const auto& e : entries) {
        auto* sub = app.add_subcommand(e.name, e.help);
        add_common(sub, opts);
        if (e.experiment == Experiment::charsum) {
            sub->add_option("--c", opts.c, "Moduli c, e.g. [1,2,3]");
            sub->add_option("--w", opts.w, "Frequencies, e.g. [[0,0,0,0],[1,2,3,4]]");
            sub->add_option("--method", opts.method, "brute, closed or crt")
                ->check(CLI::IsMember({"brute", "closed", "crt"}));
        }
        if (e.experiment == Experiment::delta_check) {
            sub->add_option("--Q", opts.Q, "Q values, e.g. [5,10,20]");
            sub->add_option("--n-range", opts.n_range, "Check |n| up to this (default Q^2)");
        }
        if (e.experiment == Experiment::count) sub->add_option("--labels", opts.labels, "Comma-separated: M,Mstar,Tq,Nproxy,isotropic");
        if (e.experiment == Experiment::decay_report) sub->add_option("--c", opts.c, "Moduli c (default: from Q/2 doubling)");
        sub->callback([&chosen, exp = e.experiment] { chosen = exp; });
    }
    auto* cal = app.add_subcommand("calibrate", "Re-measures the recorded constants and writes the constants file");
    cal->add_option("--out", opts.out_path, "Constants file to write");
    cal->add_option("--threads", opts.threads, "Worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        if (cal->parsed()) return run_calibrate(opts);
        return run(opts, *chosen);
    } catch (const BudgetExhausted& e) {
        std::cerr << "inconclusive: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
