#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "auglab/experiments.hpp"
#include "auglab/report.hpp"

using namespace auglab;
namespace ex = auglab::experiments;

namespace {

ex::ExperimentConfig make_config(const std::string& name, std::uint64_t seed) {
    ex::ExperimentConfig config;
    config.experiment = name;
    config.seed = seed;
    config.seed_set = true;
    return config;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("registry lists the experiment surface") {
    const auto& infos = ex::registry();
    CHECK(infos.size() == 6);
    bool has_fig2 = false;
    for (const auto& info : infos)
        if (info.name == "fig2") has_fig2 = true;
    CHECK(has_fig2);
}

TEST_CASE("config validation") {
    ex::ExperimentConfig config = make_config("safe-region", 1);
    CHECK_NOTHROW(config.validate());

    ex::ExperimentConfig unseeded = config;
    unseeded.seed_set = false;
    CHECK_THROWS_AS(unseeded.validate(), std::invalid_argument);

    ex::ExperimentConfig unknown = make_config("no-such-experiment", 1);
    CHECK_THROWS_AS(unknown.validate(), std::invalid_argument);

    ex::ExperimentConfig bad_format = config;
    bad_format.format = "yaml";
    CHECK_THROWS_AS(bad_format.validate(), std::invalid_argument);

    ex::ExperimentConfig bad_param = config;
    bad_param.params["not_a_param"] = "3";
    CHECK_THROWS_AS(ex::run_experiment(bad_param), std::invalid_argument);

    ex::ExperimentConfig bad_type = config;
    bad_type.params["n_angles"] = "\"twelve\"";
    CHECK_THROWS_AS(ex::run_experiment(bad_type), std::invalid_argument);
}

TEST_CASE("config file loading rejects unknown keys") {
    std::filesystem::path path = std::filesystem::temp_directory_path() / "auglab_cfg_test.json";
    {
        std::ofstream f(path);
        f << R"({"experiment":"safe-region","seed":7,"params":{"n_angles":24}})";
    }
    ex::ExperimentConfig config = ex::load_config_file(path.string());
    CHECK(config.experiment == "safe-region");
    CHECK(config.seed == 7);
    CHECK(config.params.at("n_angles") == "24");

    {
        std::ofstream f(path);
        f << R"({"experiment":"safe-region","seed":7,"bogus":1})";
    }
    CHECK_THROWS_AS(ex::load_config_file(path.string()), std::invalid_argument);
    std::filesystem::remove(path);
}

TEST_CASE("verify suite dispatch") {
    CHECK_THROWS_AS(ex::run_verify("no-such-suite", 1), std::invalid_argument);
    ExperimentReport report = ex::run_verify("kovanic", 5);
    CHECK(report.all_passed());
}

TEST_CASE("verify reports are byte-identical under a fixed seed") {
    ExperimentReport a = ex::run_verify("theorem1", 42);
    ExperimentReport b = ex::run_verify("theorem1", 42);
    CHECK(a.all_passed());
    CHECK(a.to_csv() == b.to_csv());
    CHECK(a.to_json() == b.to_json());
}

TEST_CASE("safe-region experiment output and determinism") {
    ex::ExperimentConfig config = make_config("safe-region", 11);
    config.params["n_angles"] = "24";
    ExperimentReport a = ex::run_experiment(config);
    ExperimentReport b = ex::run_experiment(config);
    CHECK(a.all_passed());
    CHECK(a.to_csv() == b.to_csv());
    CHECK(a.rows.size() == 24);
    CHECK(a.columns.size() == 6);
}

TEST_CASE("l1-ratio experiment with small dimensions") {
    ex::ExperimentConfig config = make_config("l1-ratio", 13);
    config.params["d_list"] = "[2,3]";
    config.params["mc_trials"] = "40";
    ExperimentReport report = ex::run_experiment(config);
    CHECK(report.all_passed());
    CHECK(report.rows.size() == 2);
}

TEST_CASE("report files are written per the format tag") {
    ex::ExperimentConfig config = make_config("safe-region", 17);
    config.params["n_angles"] = "16";
    ExperimentReport report = ex::run_experiment(config);

    std::filesystem::path dir = std::filesystem::temp_directory_path() / "auglab_report_test";
    std::filesystem::remove_all(dir);
    auto written = write_report_files(report, dir.string(), "both", 17);
    REQUIRE(written.size() == 2);
    CHECK(slurp(written[0]) == report.to_csv());
    CHECK(slurp(written[1]) == report.to_json());

    // The CSV header is the first line.
    std::string csv = report.to_csv();
    CHECK(csv.rfind("angle,dir_x,dir_y,dir_z,safe,error_diff\n", 0) == 0);

    CHECK_THROWS_AS(write_report_files(report, dir.string(), "yaml", 17), std::invalid_argument);
    std::filesystem::remove_all(dir);
}

TEST_CASE("format_double round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.678901234567, -0.0}) {
        double parsed = std::stod(format_double(v));
        CHECK(parsed == v);
    }
}
