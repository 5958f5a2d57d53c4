#include <momentlab/lab/report.hpp>
#include <momentlab/error.hpp>
#include <momentlab/random_fields.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace momentlab::lab {

bool RunReport::pass() const noexcept
{
    if (records.empty()) return false;
    for (const auto& r : records) {
        if (!r.passed) return false;
    }
    return true;
}

CheckRecord& RunReport::below(std::string name, double residual, double tolerance)
{
    return require(std::move(name), residual < tolerance, residual, tolerance);
}

CheckRecord& RunReport::require(std::string name, bool passed, double residual, double tolerance)
{
    records.push_back({std::move(name), passed && std::isfinite(residual), residual, tolerance, 0.0, {}});
    return records.back();
}

namespace {
nlohmann::json number(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }
} // namespace

nlohmann::json to_json(const RunReport& report)
{
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : report.records) {
        nlohmann::json rec = {{"name", r.name},
                              {"status", r.passed ? "pass" : "fail"},
                              {"residual", number(r.residual)},
                              {"tolerance", number(r.tolerance)},
                              {"wall_ms", number(r.wall_ms)}};
        if (!r.note.empty()) rec["note"] = r.note;
        records.push_back(std::move(rec));
    }
    return {{"kind", report.kind},
            {"prng", rng_name},
            {"seed", report.seed},
            {"pass", report.pass()},
            {"records", std::move(records)},
            {"artifacts", report.artifacts}};
}

std::string format_text(const RunReport& report)
{
    std::ostringstream out;
    out << "# momentlab " << report.kind << " prng=" << rng_name << " seed=" << report.seed << '\n';
    for (const auto& r : report.records) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << std::setprecision(3) << std::scientific
            << " residual=" << r.residual << " tol=" << r.tolerance << std::defaultfloat;
        if (r.wall_ms > 0.0) out << " wall_ms=" << std::fixed << std::setprecision(1) << r.wall_ms << std::defaultfloat;
        if (!r.note.empty()) out << "  (" << r.note << ')';
        out << '\n';
    }
    out << (report.pass() ? "RESULT pass" : "RESULT fail") << '\n';
    return out.str();
}

void write_report(const RunReport& report, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / "report.json");
    if (!out) throw IoError("cannot write " + (dir / "report.json").string());
    out << to_json(report).dump(2) << '\n';
}

double Stopwatch::elapsed_ms() const
{
    if (!enabled_) return 0.0;
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
}

} // namespace momentlab::lab
