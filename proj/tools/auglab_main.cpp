#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "auglab/experiments.hpp"
#include "auglab/report.hpp"

namespace {

std::string default_out_dir() {
    const char* env = std::getenv("AUGLAB_OUT_DIR");
    return env != nullptr && *env != '\0' ? env : "out";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"auglab: minimum-norm regression augmentation laboratory"};
    app.require_subcommand(1);

    // verify <suite> [--seed N]
    std::string suite;
    std::uint64_t verify_seed = 42;
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite on seeded random instances");
    verify->add_option("suite", suite, "theorem1 | safe-conditions | variance | kovanic | rst | all")
        ->required();
    verify->add_option("--seed", verify_seed, "master seed (default 42)");

    // run <experiment> [--config FILE] [--seed N] [--out DIR] [--format F]
    std::string experiment, config_path, out_dir, format;
    std::uint64_t run_seed = 0;
    bool run_seed_set = false;
    CLI::App* run = app.add_subcommand("run", "run a named experiment and write CSV/JSON plot data");
    run->add_option("experiment", experiment, "experiment name (see `auglab list`)")->required();
    run->add_option("--config", config_path, "JSON config file (flags override file values)");
    run->add_option("--seed", run_seed, "master seed (required here or in the config)")
        ->each([&](const std::string&) { run_seed_set = true; });
    run->add_option("--out", out_dir, "output directory (default $AUGLAB_OUT_DIR or ./out)");
    run->add_option("--format", format, "csv | json | both (default csv)");

    CLI::App* list = app.add_subcommand("list", "list experiments and their parameters");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            auglab::ExperimentReport report = auglab::experiments::run_verify(suite, verify_seed);
            report.print_summary(std::cout);
            return report.all_passed() ? 0 : 1;
        }

        if (run->parsed()) {
            auglab::experiments::ExperimentConfig config;
            if (!config_path.empty()) config = auglab::experiments::load_config_file(config_path);
            if (!experiment.empty()) config.experiment = experiment;
            if (run_seed_set) {
                config.seed = run_seed;
                config.seed_set = true;
            }
            if (!out_dir.empty()) config.out_dir = out_dir;
            if (!format.empty()) config.format = format;
            if (config.out_dir.empty()) config.out_dir = default_out_dir();

            auglab::ExperimentReport report = auglab::experiments::run_experiment(config);
            std::vector<std::string> written =
                auglab::write_report_files(report, config.out_dir, config.format, config.seed);
            report.print_summary(std::cout);
            for (const auto& path : written) std::cout << "wrote " << path << "\n";
            return report.all_passed() ? 0 : 1;
        }

        if (list->parsed()) {
            for (const auto& info : auglab::experiments::registry()) {
                std::cout << info.name << "\n  " << info.description << "\n";
                for (const auto& p : info.params)
                    std::cout << "    " << p.name << " = " << p.default_value << "  (" << p.description << ")\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
