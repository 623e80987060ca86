#include "auglab/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace auglab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool ExperimentReport::all_passed() const {
    for (const auto& [_, ok] : checks)
        if (!ok) return false;
    return true;
}

void ExperimentReport::add_check(const std::string& check_name, bool passed) {
    checks.emplace_back(check_name, passed);
}

void ExperimentReport::add_summary(const std::string& stat_name, double value) {
    summary.emplace_back(stat_name, value);
}

void ExperimentReport::echo(const std::string& key, const std::string& value) {
    config_echo.emplace_back(key, value);
}

void ExperimentReport::echo(const std::string& key, double value) {
    config_echo.emplace_back(key, format_double(value));
}

std::string ExperimentReport::to_csv() const {
    std::string out;
    for (size_t c = 0; c < columns.size(); ++c) {
        out += columns[c];
        out += (c + 1 == columns.size()) ? '\n' : ',';
    }
    for (const auto& row : rows) {
        if (row.size() != columns.size()) throw std::logic_error("ExperimentReport: row width mismatch");
        for (size_t c = 0; c < row.size(); ++c) {
            out += format_double(row[c]);
            out += (c + 1 == row.size()) ? '\n' : ',';
        }
    }
    return out;
}

std::string ExperimentReport::to_json() const {
    nlohmann::ordered_json j;
    j["experiment"] = name;
    nlohmann::ordered_json cfg;
    for (const auto& [k, v] : config_echo) cfg[k] = v;
    j["config"] = std::move(cfg);
    j["columns"] = columns;
    j["rows"] = rows;
    nlohmann::ordered_json sum;
    for (const auto& [k, v] : summary) sum[k] = v;
    j["summary"] = std::move(sum);
    nlohmann::ordered_json chk;
    for (const auto& [k, v] : checks) chk[k] = v;
    j["checks"] = std::move(chk);
    return j.dump(2) + "\n";
}

void ExperimentReport::print_summary(std::ostream& os) const {
    os << "experiment: " << name << "\n";
    for (const auto& [k, v] : config_echo) os << "  " << k << " = " << v << "\n";
    if (!rows.empty()) {
        os << "  rows: " << rows.size() << " x {";
        for (size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
        os << "}\n";
    }
    for (const auto& [k, v] : summary) os << "  " << k << " = " << format_double(v) << "\n";
    for (const auto& [k, ok] : checks) os << "  [" << (ok ? "PASS" : "FAIL") << "] " << k << "\n";
    os << "  wall_seconds = " << format_double(wall_seconds) << "\n";
    os << (all_passed() ? "ALL CHECKS PASSED" : "CHECK FAILURES PRESENT") << "\n";
}

std::vector<std::string> write_report_files(const ExperimentReport& report, const std::string& out_dir,
                                            const std::string& format, std::uint64_t seed) {
    if (format != "csv" && format != "json" && format != "both")
        throw std::invalid_argument("write_report_files: format must be csv, json or both");
    std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("write_report_files: cannot create output directory " + out_dir);

    std::vector<std::string> written;
    auto write_one = [&](const std::string& ext, const std::string& payload) {
        std::filesystem::path path = dir / (report.name + "_" + std::to_string(seed) + ext);
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("write_report_files: cannot open " + path.string());
        f << payload;
        written.push_back(path.string());
    };
    if (format == "csv" || format == "both") write_one(".csv", report.to_csv());
    if (format == "json" || format == "both") write_one(".json", report.to_json());
    return written;
}

}  // namespace auglab
