#pragma once

#include <map>
#include <string>

namespace quadpair {

/// A measured implied constant and the run that produced it.
struct MeasuredConstant {
    double value = 0.0;
    std::string run;
};

/// Relative slack allowed between a fresh measurement and the recorded constant.
inline constexpr double kConstantSlack = 0.10;

/**
 * The constants file: one INI section per constant (C0, C1, C2, C_T, C_sieve, C_h, C_I, ...)
 * with keys value and run.
 */
class ConstantsTable {
public:
    static ConstantsTable load(const std::string& path);
    void save(const std::string& path) const;

    bool has(const std::string& name) const { return entries_.count(name) > 0; }
    const MeasuredConstant& get(const std::string& name) const;
    double value(const std::string& name) const { return get(name).value; }
    void set(const std::string& name, double value, const std::string& run);
    const std::map<std::string, MeasuredConstant>& entries() const { return entries_; }

    /// measured <= (1 + slack) * recorded
    bool admits(const std::string& name, double measured) const;

private:
    std::map<std::string, MeasuredConstant> entries_;
};

/// QUADPAIR_CONSTANTS if set, else the data file shipped with the build or install.
std::string default_constants_path();

}  // namespace quadpair
