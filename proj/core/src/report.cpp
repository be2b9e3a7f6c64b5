#include "quadpair/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "json.hpp"

namespace quadpair {

namespace {

template <class T>
std::string opt(const std::optional<T>& v) {
    if (!v) return "";
    if constexpr (std::is_floating_point_v<T>) {
        return format_real(*v);
    } else {
        return std::to_string(*v);
    }
}

template <class T>
nlohmann::json json_opt(const std::optional<T>& v) {
    if (!v) return nullptr;
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(*v)) return format_real(*v);
    }
    return *v;
}

}  // namespace

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void Report::check(bool ok, const std::string& name, double measured, double limit) {
    if (ok) return;
    failures.push_back(name + ": measured " + format_real(measured) + ", limit " + format_real(limit));
    Record r;
    r.experiment = experiment + ":fail:" + name;
    r.value_re = measured;
    r.bound = limit;
    r.ratio = limit != 0.0 ? measured / limit : measured;
    records.push_back(r);
}

void Report::append(const Report& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
    for (const auto& [k, v] : other.summary) summary[k] = v;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
    inconclusive = inconclusive || other.inconclusive;
}

void sort_records(std::vector<Record>& records) {
    std::stable_sort(records.begin(), records.end(), [](const Record& x, const Record& y) {
        if (x.experiment != y.experiment) return x.experiment < y.experiment;
        double bx = x.B.value_or(-1.0), by = y.B.value_or(-1.0);
        if (bx != by) return bx < by;
        return x.q_or_P.value_or(-1) < y.q_or_P.value_or(-1);
    });
}

void write_csv(std::ostream& out, const Report& report, bool with_seconds) {
    out << "experiment,B,q_or_P,w1,w2,w3,w4,value_re,value_im,bound,ratio,seconds\n";
    for (const auto& r : report.records) {
        out << r.experiment << ',' << opt(r.B) << ',' << opt(r.q_or_P) << ',';
        for (std::size_t i = 0; i < 4; ++i) out << (r.w ? std::to_string((*r.w)[i]) : "") << ',';
        out << opt(r.value_re) << ',' << opt(r.value_im) << ',' << opt(r.bound) << ',' << opt(r.ratio) << ','
            << (with_seconds ? format_real(r.seconds) : "") << '\n';
    }
}

void write_json(std::ostream& out, const Report& report, bool with_seconds) {
    nlohmann::json j;
    j["experiment"] = report.experiment;
    j["pass"] = report.pass();
    j["inconclusive"] = report.inconclusive;
    j["failures"] = report.failures;
    j["warnings"] = report.warnings;
    nlohmann::json summary = nlohmann::json::object();
    for (const auto& [k, v] : report.summary) summary[k] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(format_real(v));
    j["summary"] = summary;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.records) {
        nlohmann::json row;
        row["experiment"] = r.experiment;
        row["B"] = json_opt(r.B);
        row["q_or_P"] = json_opt(r.q_or_P);
        row["w"] = r.w ? nlohmann::json(*r.w) : nlohmann::json(nullptr);
        row["value_re"] = json_opt(r.value_re);
        row["value_im"] = json_opt(r.value_im);
        row["bound"] = json_opt(r.bound);
        row["ratio"] = json_opt(r.ratio);
        row["seconds"] = with_seconds ? nlohmann::json(r.seconds) : nlohmann::json(nullptr);
        rows.push_back(row);
    }
    j["records"] = rows;
    out << j.dump(2) << '\n';
}

int exit_code(const Report& report) {
    if (!report.failures.empty()) return 1;
    if (report.inconclusive) return 3;
    return 0;
}

}  // namespace quadpair
