#pragma once

#include <momentlab/lab/config.hpp>
#include <momentlab/lab/report.hpp>

namespace momentlab::lab {

/// Dispatches on config.kind, writes artifacts under config.out and returns the
/// report (also written as report.json). Throws ConfigError for invalid input.
RunReport run_experiment(const ExperimentConfig& config);

/// quick: T² invariants plus the holonomy checks. full: adds the T⁴ suite.
RunReport verify_suite(std::uint64_t seed, Level level, bool timing = false);

} // namespace momentlab::lab
