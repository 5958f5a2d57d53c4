#pragma once

#include <momentlab/calabi_flow.hpp>
#include <momentlab/error.hpp>
#include <momentlab/hopf.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace momentlab::lab {

/// Invalid configuration or command line; maps to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

enum class Kind { verify, flow, weinstein, moment_check };
enum class Level { quick, full };

std::string to_string(Kind kind);
Kind parse_kind(const std::string& name);

struct FlowConfig {
    /// θ = 1 + Σ cosine modes, unless theta_file names a field file.
    std::vector<VolumeSpec::CosineMode> theta;
    std::optional<std::filesystem::path> theta_file;
    /// "zero", or "perturbed" for a seeded low-frequency start.
    std::string initial = "zero";
    double max_t = 50.0;
    double dt = 0.0;
};

struct WeinsteinConfig {
    weinstein::R3 axis{0.0, 0.0, 1.0};
    int turns = 1;
    int substeps = 0;
    int samples = 16;
    double hamiltonian_shift = 0.0;
};

struct MomentCheckConfig {
    int probes = 20;
    double epsilon = 1e-4;
    /// Field-file stem of a connection; random when absent.
    std::optional<std::filesystem::path> connection;
};

struct ExperimentConfig {
    Kind kind = Kind::verify;
    int half_dim = 1;
    int resolution = 0; // 0 picks the per-dimension default
    /// Kind-specific default when unset; verify uses pinned tolerances only.
    std::optional<double> tol;
    std::uint64_t seed = 1;
    std::filesystem::path out = "momentlab-out";
    Level level = Level::quick;
    bool timing = false;
    FlowConfig flow;
    WeinsteinConfig weinstein;
    MomentCheckConfig moment_check;

    double tolerance() const;
    Grid grid() const;
};

/// Strict parse: unknown keys and wrong types raise ConfigError.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& config);

/// Throws ConfigError naming the first offending field.
void validate(const ExperimentConfig& config);

/// The 0.3-cosine preset: θ = 1 + 0.3 cos 2πx₁.
std::vector<VolumeSpec::CosineMode> cosine_preset(int half_dim);

} // namespace momentlab::lab
