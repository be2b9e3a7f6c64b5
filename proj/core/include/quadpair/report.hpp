#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadpair/forms.hpp"

namespace quadpair {

/// One CSV row: experiment,B,q_or_P,w1,w2,w3,w4,value_re,value_im,bound,ratio,seconds. Unset fields stay empty.
struct Record {
    std::string experiment;
    std::optional<double> B;
    std::optional<std::int64_t> q_or_P;
    std::optional<Vec4> w;
    std::optional<double> value_re, value_im, bound, ratio;
    double seconds = 0.0;
};

struct Report {
    std::string experiment;
    std::vector<Record> records;
    std::map<std::string, double> summary;
    /// Names of violated assertions with the measured value, e.g. "weil_ratio 1.93 > C0 1.80".
    std::vector<std::string> failures;
    std::vector<std::string> warnings;
    bool inconclusive = false;

    bool pass() const { return failures.empty() && !inconclusive; }
    /// Records the assertion; a failure also adds a record naming it.
    void check(bool ok, const std::string& name, double measured, double limit);
    void append(const Report& other);
};

/// Stable sort by (experiment, B, q_or_P); rows with equal keys keep their emission order.
void sort_records(std::vector<Record>& records);

/// Full-precision CSV; the seconds column is left empty unless with_seconds is set, which keeps
/// repeated runs byte-identical.
void write_csv(std::ostream& out, const Report& report, bool with_seconds);
void write_json(std::ostream& out, const Report& report, bool with_seconds);

/// Shortest decimal that reads back to the same double.
std::string format_real(double v);

/// Exit code for a finished run: 0 pass, 1 assertion failure, 3 inconclusive.
int exit_code(const Report& report);

}  // namespace quadpair
