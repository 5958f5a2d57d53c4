#include <momentlab/lab/report.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace momentlab::lab;

TEST(Report, PassRequiresEveryRecord)
{
    RunReport r{"verify", 7, {}, nlohmann::json::object()};
    EXPECT_FALSE(r.pass());
    r.below("a", 1e-9, 1e-8);
    EXPECT_TRUE(r.pass());
    r.below("b", 1e-8, 1e-8);
    EXPECT_FALSE(r.records.back().passed);
    EXPECT_FALSE(r.pass());
}

TEST(Report, NonFiniteResidualsFail)
{
    RunReport r{"verify", 1, {}, nlohmann::json::object()};
    EXPECT_FALSE(r.below("nan", std::nan(""), 1.0).passed);
    EXPECT_FALSE(r.require("inf", true, INFINITY, 1.0).passed);
    EXPECT_TRUE(r.require("ok", true, -3.0, 1.0).passed);
}

TEST(Report, JsonAndTextFormats)
{
    RunReport r{"flow", 3, {}, nlohmann::json::object()};
    r.below("x", 0.5, 1.0);
    r.below("y", 2.0, 1.0).note = "too big";
    const auto j = to_json(r);
    EXPECT_EQ(j.at("kind"), "flow");
    EXPECT_EQ(j.at("prng"), "mt19937_64");
    EXPECT_EQ(j.at("seed"), 3);
    EXPECT_EQ(j.at("pass"), false);
    EXPECT_EQ(j.at("records")[0].at("status"), "pass");
    EXPECT_EQ(j.at("records")[1].at("status"), "fail");
    EXPECT_EQ(j.at("records")[1].at("note"), "too big");
    EXPECT_FALSE(j.at("records")[0].contains("note"));

    const std::string text = format_text(r);
    EXPECT_EQ(text.rfind("# momentlab flow prng=mt19937_64 seed=3", 0), 0u) << text;
    EXPECT_NE(text.find("PASS x "), std::string::npos);
    EXPECT_NE(text.find("FAIL y "), std::string::npos);
    EXPECT_NE(text.find("RESULT fail"), std::string::npos);
}

TEST(Report, WritesReportJson)
{
    const auto dir = std::filesystem::temp_directory_path() / "momentlab-tests" / "report";
    std::filesystem::create_directories(dir);
    RunReport r{"weinstein", 1, {}, nlohmann::json::object()};
    r.below("z", 0.0, 1.0);
    write_report(r, dir);
    std::ifstream in(dir / "report.json");
    EXPECT_EQ(nlohmann::json::parse(in), to_json(r));
}

TEST(Report, DisabledStopwatchReadsZero)
{
    Stopwatch w(false);
    volatile double sink = 0;
    for (int i = 0; i < 100000; ++i) sink = sink + i;
    EXPECT_EQ(w.elapsed_ms(), 0.0);
    EXPECT_GE(Stopwatch(true).elapsed_ms(), 0.0);
}
