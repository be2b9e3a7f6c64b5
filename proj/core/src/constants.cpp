#include "quadpair/constants.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "quadpair/errors.hpp"
#include "quadpair/report.hpp"

#ifndef QUADPAIR_SOURCE_DATA_DIR
#define QUADPAIR_SOURCE_DATA_DIR ""
#endif
#ifndef QUADPAIR_INSTALL_DATA_DIR
#define QUADPAIR_INSTALL_DATA_DIR ""
#endif

namespace quadpair {

ConstantsTable ConstantsTable::load(const std::string& path) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(path, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("constants file: ") + e.what());
    }
    ConstantsTable table;
    for (const auto& [name, body] : tree) {
        auto value = body.get_optional<double>("value");
        if (!value) throw ConfigError("constants file: [" + name + "] has no numeric value");
        table.entries_[name] = MeasuredConstant{*value, body.get<std::string>("run", "")};
    }
    return table;
}

void ConstantsTable::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write constants file '" + path + "'");
    out << "; Measured implied constants. Regenerate with: quadpair calibrate --out <this file>\n";
    for (const auto& [name, c] : entries_) {
        out << "\n[" << name << "]\n";
        out << "value = " << format_real(c.value) << "\n";
        out << "run = " << c.run << "\n";
    }
}

const MeasuredConstant& ConstantsTable::get(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw ConfigError("constant " + name + " is not recorded");
    return it->second;
}

void ConstantsTable::set(const std::string& name, double value, const std::string& run) {
    entries_[name] = MeasuredConstant{value, run};
}

bool ConstantsTable::admits(const std::string& name, double measured) const {
    return measured <= (1.0 + kConstantSlack) * value(name);
}

std::string default_constants_path() {
    if (const char* env = std::getenv("QUADPAIR_CONSTANTS")) return env;
    namespace fs = std::filesystem;
    for (const char* dir : {QUADPAIR_SOURCE_DATA_DIR, QUADPAIR_INSTALL_DATA_DIR}) {
        if (*dir == '\0') continue;
        fs::path p = fs::path(dir) / "constants.ini";
        if (fs::exists(p)) return p.string();
    }
    return "data/constants.ini";
}

}  // namespace quadpair
