#pragma once

#include <string>
#include <vector>

#include "qsep/report.hpp"

namespace qsep {

constexpr uint64_t kDefaultSeed = 1;

struct ExperimentOptions {
    uint64_t seed = kDefaultSeed;
    long trials = -1;  // -1 keeps each experiment's default
    nlohmann::json config = nlohmann::json::object();  // per-experiment overrides
    std::string out_dir;  // when set, JSON report and per-trial CSVs are written here
};

struct ExperimentInfo {
    std::string name;
    std::string description;
};

/// Names and one-line descriptions of every runnable experiment.
const std::vector<ExperimentInfo>& list_experiments();

/// Runs one named experiment. Throws std::invalid_argument for an unknown
/// name or out-of-cap parameters.
Report run_experiment(const std::string& name, const ExperimentOptions& opts);

/// Runs the full battery with per-experiment default parameters; failures do
/// not abort the remaining experiments.
std::vector<Report> run_suite(const ExperimentOptions& opts);

}  // namespace qsep
