#include "qsep/report.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace qsep {

nlohmann::json report_to_json(const Report& r) {
    nlohmann::json j;
    j["experiment"] = r.experiment;
    j["params"] = r.params;
    j["seed"] = r.seed;
    j["estimates"] = r.estimates;
    j["bounds"] = r.bounds;
    j["pass"] = r.pass;
    j["wall_seconds"] = r.wall_seconds;
    return j;
}

void write_report(const Report& r, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path path = std::filesystem::path(dir) / (r.experiment + ".json");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_report: cannot open " + path.string());
    out << report_to_json(r).dump(2) << "\n";
    if (!out) throw std::runtime_error("write_report: write failed for " + path.string());
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    for (size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    out.precision(17);
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::invalid_argument("write_csv: row width != header width");
        for (size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "\n");
    }
    if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

}  // namespace qsep
