#pragma once

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace momentlab::lab {

struct CheckRecord {
    std::string name;
    bool passed = false;
    double residual = 0.0;
    double tolerance = 0.0;
    double wall_ms = 0.0;
    /// Free-form diagnostic, empty on a clean pass.
    std::string note;
};

struct RunReport {
    std::string kind;
    std::uint64_t seed = 0;
    std::vector<CheckRecord> records;
    /// Artifact name -> path relative to the output directory.
    nlohmann::json artifacts = nlohmann::json::object();

    /// True iff every record passed (and there is at least one).
    bool pass() const noexcept;
    CheckRecord& below(std::string name, double residual, double tolerance);
    CheckRecord& require(std::string name, bool passed, double residual, double tolerance);
};

nlohmann::json to_json(const RunReport& report);
/// One line per record, "PASS name residual=... tol=...", then a verdict.
std::string format_text(const RunReport& report);
void write_report(const RunReport& report, const std::filesystem::path& dir);

/// Wall-clock timer that reads 0 when disabled, keeping artifacts reproducible.
class Stopwatch {
public:
    explicit Stopwatch(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const;
    void restart() { start_ = std::chrono::steady_clock::now(); }

private:
    bool enabled_;
    std::chrono::steady_clock::time_point start_;
};

} // namespace momentlab::lab
