#include "quadpair/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "quadpair/errors.hpp"
#include "quadpair/modular.hpp"

namespace quadpair {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n\"");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n\"");
    return s.substr(b, e - b + 1);
}

// Splits the contents of the outermost brackets at top-level commas.
std::vector<std::string> split_array(const std::string& text) {
    std::string t = trim(text);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw ConfigError("expected a bracketed array, got '" + text + "'");
    std::vector<std::string> items;
    std::string current;
    int depth = 0;
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
        char ch = t[i];
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        if (depth < 0) throw ConfigError("unbalanced brackets in '" + text + "'");
        if (ch == ',' && depth == 0) {
            items.push_back(trim(current));
            current.clear();
        } else {
            current += ch;
        }
    }
    if (depth != 0) throw ConfigError("unbalanced brackets in '" + text + "'");
    if (!trim(current).empty() || !items.empty()) items.push_back(trim(current));
    for (const auto& item : items)
        if (item.empty()) throw ConfigError("empty element in '" + text + "'");
    return items;
}

std::int64_t to_int(const std::string& s) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("not an integer: '" + s + "'");
    }
    if (used != s.size()) throw ConfigError("not an integer: '" + s + "'");
    return v;
}

double to_real(const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
    return v;
}

Coeffs4 to_coeffs(const std::string& text, const std::string& key) {
    auto v = parse_int_array(text);
    if (v.size() != 4) throw ConfigError("pair." + key + " needs exactly 4 integers");
    return {v[0], v[1], v[2], v[3]};
}

}  // namespace

std::string to_string(Experiment e) {
    switch (e) {
        case Experiment::verify: return "verify";
        case Experiment::count: return "count";
        case Experiment::charsum: return "charsum";
        case Experiment::delta_check: return "delta-check";
        case Experiment::tq_bound: return "tq-bound";
        case Experiment::lemma41_check: return "lemma41-check";
        case Experiment::sieve_assembly: return "sieve-assembly";
        case Experiment::decay_report: return "decay-report";
    }
    return "unknown";
}

Experiment parse_experiment(const std::string& name) {
    for (auto e : {Experiment::verify, Experiment::count, Experiment::charsum, Experiment::delta_check, Experiment::tq_bound,
                   Experiment::lemma41_check, Experiment::sieve_assembly, Experiment::decay_report}) {
        if (to_string(e) == name) return e;
    }
    throw ConfigError("unknown experiment '" + name + "'");
}

std::vector<std::int64_t> parse_int_array(const std::string& text) {
    std::vector<std::int64_t> out;
    for (const auto& item : split_array(text)) out.push_back(to_int(item));
    return out;
}

std::vector<double> parse_real_array(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split_array(text)) out.push_back(to_real(item));
    return out;
}

std::vector<std::vector<std::int64_t>> parse_int_rows(const std::string& text) {
    auto items = split_array(text);
    std::vector<std::vector<std::int64_t>> rows;
    if (!items.empty() && items.front().front() != '[') {
        rows.push_back(parse_int_array(text));
        return rows;
    }
    for (const auto& item : items) rows.push_back(parse_int_array(item));
    return rows;
}

double ExperimentConfig::tolerance(const std::string& key, double fallback) const {
    auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
}

bool is_admissible(const FormPair& pair, std::int64_t q) {
    if (q < 1 || q % 2 == 0) return false;
    try {
        SquarefreeModulus sq(q);
        for (auto p : sq.primes())
            if (pair.divides_2alphaD(p)) return false;
    } catch (const InvalidModulus&) {
        return false;
    }
    return true;
}

void require_admissible_list(const FormPair& pair, const std::vector<std::int64_t>& q_list) {
    for (auto q : q_list) {
        if (!is_admissible(pair, q))
            throw PreconditionError("q = " + std::to_string(q) +
                                    " is not admissible for the pair (needs odd, squarefree, coprime to 2*alpha*D)");
    }
}

ExperimentConfig parse_config(const std::string& text) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    static const std::map<std::string, std::vector<std::string>> known{
        {"pair", {"a", "b"}},
        {"experiment", {"name", "seed", "output"}},
        {"grid", {"B", "q", "P_policy", "P", "Q", "n_range", "c", "w", "method", "labels", "X", "w_max", "samples", "p_max"}},
        {"tolerances", {}},
    };
    ExperimentConfig cfg;
    for (const auto& [section, body] : tree) {
        auto it = known.find(section);
        if (it == known.end()) throw ConfigError("unknown config section [" + section + "]");
        if (body.empty() && !body.data().empty()) throw ConfigError("key '" + section + "' outside any section");
        for (const auto& [key, value] : body) {
            const std::string v = trim(value.data());
            if (section == "tolerances") {
                cfg.tolerances[key] = to_real(v);
                continue;
            }
            if (std::find(it->second.begin(), it->second.end(), key) == it->second.end())
                throw ConfigError("unknown key '" + key + "' in [" + section + "]");
        }
    }
    Coeffs4 a = FormPair::canonical().a(), b = FormPair::canonical().b();
    if (auto v = tree.get_optional<std::string>("pair.a")) a = to_coeffs(*v, "a");
    if (auto v = tree.get_optional<std::string>("pair.b")) b = to_coeffs(*v, "b");
    try {
        cfg.pair = FormPair(a, b);
    } catch (const Error& e) {
        throw ConfigError(std::string("pair: ") + e.what());
    }
    if (auto v = tree.get_optional<std::string>("experiment.name")) cfg.experiment = parse_experiment(trim(*v));
    if (auto v = tree.get_optional<std::string>("experiment.seed")) {
        auto s = to_int(trim(*v));
        if (s < 0) throw ConfigError("seed must be non-negative");
        cfg.seed = static_cast<std::uint64_t>(s);
    }
    if (auto v = tree.get_optional<std::string>("experiment.output")) cfg.output_path = trim(*v);
    if (auto v = tree.get_optional<std::string>("grid.B")) cfg.B_grid = parse_int_array(*v);
    if (auto v = tree.get_optional<std::string>("grid.q")) cfg.q_list = parse_int_array(*v);
    if (auto v = tree.get_optional<std::string>("grid.P_policy")) {
        auto p = trim(*v);
        if (p == "fixed") cfg.p_policy = PPolicy::fixed;
        else if (p == "cube_root") cfg.p_policy = PPolicy::cube_root;
        else throw ConfigError("P_policy must be 'fixed' or 'cube_root'");
    }
    if (auto v = tree.get_optional<std::string>("grid.P")) cfg.P = to_int(trim(*v));
    if (cfg.p_policy == PPolicy::fixed && cfg.P < 1) throw ConfigError("P_policy = fixed needs P >= 1");
    if (auto v = tree.get_optional<std::string>("grid.Q")) cfg.Q_list = parse_real_array(*v);
    if (auto v = tree.get_optional<std::string>("grid.n_range")) cfg.n_range = to_int(trim(*v));
    if (auto v = tree.get_optional<std::string>("grid.c")) cfg.c_list = parse_int_array(*v);
    if (auto v = tree.get_optional<std::string>("grid.w")) {
        for (const auto& row : parse_int_rows(*v)) {
            if (row.size() != 4) throw ConfigError("every w needs 4 integers");
            cfg.w_list.push_back({row[0], row[1], row[2], row[3]});
        }
    }
    if (auto v = tree.get_optional<std::string>("grid.method")) cfg.method = trim(*v);
    if (auto v = tree.get_optional<std::string>("grid.labels")) {
        for (const auto& item : split_array(*v)) cfg.labels.push_back(trim(item));
    }
    if (auto v = tree.get_optional<std::string>("grid.X")) cfg.X = to_int(trim(*v));
    if (auto v = tree.get_optional<std::string>("grid.w_max")) cfg.w_max = to_int(trim(*v));
    if (auto v = tree.get_optional<std::string>("grid.samples")) cfg.samples = to_int(trim(*v));
    if (auto v = tree.get_optional<std::string>("grid.p_max")) cfg.p_max = to_int(trim(*v));
    for (auto B : cfg.B_grid)
        if (B < 0) throw ConfigError("B values must be >= 0");
    for (auto c : cfg.c_list)
        if (c < 1) throw ConfigError("c values must be >= 1");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace quadpair
