#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace qsep {

/// One experiment's result record. `estimates` carries every measured number
/// (with standard errors or an "exact" marker), `bounds` the analytic
/// formulas they were checked against, `pass` the conjunction of assertions.
struct Report {
    std::string experiment;
    nlohmann::json params = nlohmann::json::object();
    uint64_t seed = 0;
    nlohmann::json estimates = nlohmann::json::object();
    nlohmann::json bounds = nlohmann::json::object();
    bool pass = false;
    double wall_seconds = 0.0;
};

nlohmann::json report_to_json(const Report& r);

/// Writes the JSON record to <dir>/<experiment>.json, creating dir if needed.
void write_report(const Report& r, const std::string& dir);

/// Plain CSV writer: one header row, then one row per record.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace qsep
