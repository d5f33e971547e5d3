// Experiment runner. Exit codes: 0 all assertions passed, 1 an experiment ran
// but failed its assertions, 2 unknown experiment name, 3 invalid
// configuration, 4 I/O failure.
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "qsep/experiments.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitBadConfig = 3;
constexpr int kExitIo = 4;

std::string default_out_dir() {
    const char* env = std::getenv("QSEP_OUT_DIR");
    return env ? std::string(env) : std::string();
}

void print_summary(const qsep::Report& rep) {
    std::cout << (rep.pass ? "PASS" : "FAIL") << "  " << rep.experiment << "  ("
              << rep.wall_seconds << " s)\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical experiments on Fourier-sampled sets, query strategies, and couplings"};
    app.require_subcommand(1);

    std::string experiment_name;
    std::string config_path;
    std::string out_dir = default_out_dir();
    uint64_t seed = qsep::kDefaultSeed;
    long trials = -1;

    CLI::App* run = app.add_subcommand("run", "Run one named experiment");
    run->add_option("experiment", experiment_name, "Experiment name (see `list`)")->required();
    run->add_option("--config", config_path, "JSON file with parameter overrides");
    run->add_option("--seed", seed, "Master seed");
    run->add_option("--trials", trials, "Trial-count override");
    run->add_option("--out", out_dir, "Output directory for JSON/CSV reports");

    CLI::App* suite = app.add_subcommand("suite", "Run the full experiment battery");
    suite->add_option("--seed", seed, "Master seed");
    suite->add_option("--out", out_dir, "Output directory for JSON/CSV reports");

    CLI::App* list = app.add_subcommand("list", "List experiments with descriptions");
    (void)list;

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand("list")) {
        for (const qsep::ExperimentInfo& info : qsep::list_experiments())
            std::cout << info.name << "  -  " << info.description << "\n";
        return 0;
    }

    qsep::ExperimentOptions opts;
    opts.seed = seed;
    opts.trials = trials;
    opts.out_dir = out_dir;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot open config file: " << config_path << "\n";
            return kExitIo;
        }
        try {
            in >> opts.config;
        } catch (const std::exception& e) {
            std::cerr << "config parse error: " << e.what() << "\n";
            return kExitBadConfig;
        }
    }

    try {
        if (app.got_subcommand("suite")) {
            bool all_pass = true;
            for (const qsep::Report& rep : qsep::run_suite(opts)) {
                print_summary(rep);
                all_pass = all_pass && rep.pass;
            }
            return all_pass ? 0 : kExitFail;
        }
        qsep::Report rep = qsep::run_experiment(experiment_name, opts);
        print_summary(rep);
        if (out_dir.empty()) std::cout << qsep::report_to_json(rep).dump(2) << "\n";
        return rep.pass ? 0 : kExitFail;
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        std::cerr << "error: " << what << "\n";
        return what.rfind("unknown experiment", 0) == 0 ? kExitUnknown : kExitBadConfig;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        const std::string what = e.what();
        std::cerr << "error: " << what << "\n";
        return what.find("cannot open") != std::string::npos ||
                       what.find("write failed") != std::string::npos
                   ? kExitIo
                   : kExitBadConfig;
    }
}
