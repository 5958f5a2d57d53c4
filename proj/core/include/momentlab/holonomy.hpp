#pragma once

#include <momentlab/error.hpp>
#include <momentlab/hopf.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace momentlab::weinstein {

/// The loop t ↦ rotation by 2π·turns·t about axis, t ∈ [0, 1].
struct LoopSpec {
    R3 axis{0.0, 0.0, 1.0};
    int turns = 1;
    /// RK4 steps over the loop; 0 picks 1000·max(1, |turns|).
    int substeps = 0;
    /// Constant added to the mean-zero Hamiltonian (per turn).
    double hamiltonian_shift = 0.0;
};

struct HolonomyResult {
    std::complex<double> phase;
    double variance;
    /// RK4 steps per trajectory.
    long step_count;
    int substeps;
};

int effective_substeps(const LoopSpec& loop) noexcept;

/// Transports z0 along the lifted schedule that runs the segments in order,
/// each over an equal share of [0, 1]. No accuracy precondition.
PrequantumPoint integrate_loop(std::span<const LoopSpec> segments, const PrequantumPoint& z0);

/// Time-1 map sampled at `samples` seeded random points of S³. Requires
/// substeps ≥ 1000·|turns| per segment; throws NumericalError when the map is
/// not scalar (variance above 1e-8).
HolonomyResult loop_holonomy(std::span<const LoopSpec> segments, int samples = 16, std::uint64_t seed = 1);
HolonomyResult loop_holonomy(const LoopSpec& loop, int samples = 16, std::uint64_t seed = 1);

struct RefinementStep {
    int substeps;
    std::complex<double> phase;
};

class WeinsteinConvergenceError : public Error {
public:
    WeinsteinConvergenceError(const std::string& what, std::vector<RefinementStep> trace)
        : Error(what), trace_(std::move(trace))
    {}
    const std::vector<RefinementStep>& trace() const noexcept { return trace_; }

private:
    std::vector<RefinementStep> trace_;
};

/// loop_holonomy with substep doubling until successive phases agree to 1e-6.
HolonomyResult weinstein_hom(std::span<const LoopSpec> segments, int samples = 16, std::uint64_t seed = 1);
HolonomyResult weinstein_hom(const LoopSpec& loop, int samples = 16, std::uint64_t seed = 1);

/// {axis, turns, substeps, lambda_re, lambda_im, variance}.
nlohmann::json to_json(const LoopSpec& loop, const HolonomyResult& result);

} // namespace momentlab::weinstein
