#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace auglab {

/// Result of one experiment or verification suite: a fixed column schema with
/// numeric rows, named summary statistics and embedded pass/fail assertions.
/// Serialized CSV/JSON bytes depend only on the payload (wall-clock is
/// excluded), so identical config+seed reproduces identical files.
struct ExperimentReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> config_echo;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, double>> summary;
    std::vector<std::pair<std::string, bool>> checks;
    double wall_seconds = 0.0;

    bool all_passed() const;
    void add_check(const std::string& name, bool passed);
    void add_summary(const std::string& name, double value);
    void echo(const std::string& key, const std::string& value);
    void echo(const std::string& key, double value);

    std::string to_csv() const;   // header row first, %.17g values, LF endings
    std::string to_json() const;  // same payload, nested object form
    void print_summary(std::ostream& os) const;
};

/// Shortest exact decimal form used across all serialization.
std::string format_double(double v);

/// Writes <out_dir>/<name>_<seed>.csv / .json per the format tag
/// (csv | json | both). Returns the written paths.
std::vector<std::string> write_report_files(const ExperimentReport& report, const std::string& out_dir,
                                            const std::string& format, std::uint64_t seed);

}  // namespace auglab
