#pragma once

#include <momentlab/error.hpp>
#include <momentlab/kahler.hpp>

#include <filesystem>
#include <optional>
#include <vector>

namespace momentlab {

/// Prescribed volume form θ = density · dV with ∫θ = 1.
class VolumeSpec {
public:
    struct CosineMode {
        std::vector<int> wavevector;
        double amplitude;
        double phase = 0.0;
    };

    /// Validates positivity and unit total volume (within 1e-12).
    explicit VolumeSpec(ScalarField density);

    static VolumeSpec flat(const Grid& grid);
    /// θ = 1 + Σ a_m cos(2π k_m·x + φ_m).
    static VolumeSpec cosine_modes(const Grid& grid, const std::vector<CosineMode>& modes);

    const ScalarField& density() const noexcept { return density_; }
    const Grid& grid() const noexcept { return density_.grid(); }

private:
    ScalarField density_;
};

struct FlowState;

/// Mean-zero potential φ with ω_ref + (i/2π)∂̄∂φ > 0.
class KahlerPotential {
public:
    /// Subtracts the mean; throws KahlerConeError when the margin is ≤ 0.
    static KahlerPotential make(const BundleSetup& bundle, ScalarField phi);
    static KahlerPotential zero(const BundleSetup& bundle);

    const ScalarField& values() const noexcept { return phi_; }
    /// Minimum over the grid of the Monge–Ampère density.
    double margin() const noexcept { return margin_; }

private:
    friend FlowState flow_step(const BundleSetup&, const FlowState&, const VolumeSpec&, double);
    KahlerPotential(ScalarField phi, double margin) : phi_(std::move(phi)), margin_(margin) {}
    ScalarField phi_;
    double margin_;
};

/// Coefficient of ω_φⁿ/n! against dV, for any φ (no cone check).
ScalarField monge_ampere_density(const BundleSetup& bundle, const ScalarField& phi);

/// ρ(φ); throws KahlerConeError("left the Kähler cone") if its minimum is ≤ 0.
ScalarField ma_density(const BundleSetup& bundle, const ScalarField& phi);
ScalarField ma_density(const BundleSetup& bundle, const KahlerPotential& phi);

/// F(φ) = ∫₀¹ ∫ φ (ρ(tφ) − θ) dV dt. Accepts unnormalized φ; throws
/// KahlerConeError if the affine path tφ leaves the cone.
double kempf_ness(const BundleSetup& bundle, const ScalarField& phi, const VolumeSpec& theta);
double kempf_ness(const BundleSetup& bundle, const KahlerPotential& phi, const VolumeSpec& theta);

/// L²(θ) gradient of F: ρ(φ)/θ − 1.
ScalarField kn_gradient(const BundleSetup& bundle, const ScalarField& phi, const VolumeSpec& theta);

/// ⟨f, g⟩ = ∫ f g θ.
double potential_inner_product(const ScalarField& f, const ScalarField& g, const VolumeSpec& theta);

struct FlowState {
    KahlerPotential phi;
    double t;
    double energy;
    double residual; // ‖ρ(φ)/θ − 1‖∞
    ScalarField density; // ρ(φ), reused as the first RK4 stage
};

FlowState initial_state(const BundleSetup& bundle, const KahlerPotential& phi0, const VolumeSpec& theta);

/// dt ≤ 0.8 · 4π / (λ_max · max(1/θ)), λ_max the largest grid Laplacian eigenvalue.
double stable_time_step(const Grid& grid, const VolumeSpec& theta);

/// One classical RK4 step of φ̇ = −(ρ(φ)/θ − 1), re-projected to mean zero.
/// Throws KahlerConeError if the new potential leaves the cone.
FlowState flow_step(const BundleSetup& bundle, const FlowState& state, const VolumeSpec& theta, double dt);

struct TraceRow {
    double t;
    double energy;
    double residual;
    double margin;
    double wall_ms;
};

struct FlowOptions {
    double tol = 1e-8;
    double max_t = 50.0;
    /// 0 selects stable_time_step.
    double dt = 0.0;
    /// Record wall-clock time per row; off keeps traces byte-reproducible.
    bool record_wall_time = false;
};

struct FlowResult {
    std::vector<TraceRow> trace;
    KahlerPotential phi;
    std::size_t steps;
};

class FlowDivergedError : public Error {
public:
    FlowDivergedError(const std::string& what, std::vector<TraceRow> trace)
        : Error(what), trace_(std::move(trace))
    {}
    const std::vector<TraceRow>& trace() const noexcept { return trace_; }

private:
    std::vector<TraceRow> trace_;
};

/// Steps until residual < tol; throws FlowDivergedError (with trace) once t > max_t.
FlowResult run_flow(const BundleSetup& bundle, const VolumeSpec& theta, const KahlerPotential& phi0,
                    const FlowOptions& options = {});

/// Exact n = 1 solution of Δφ = 4π(1 − θ), mean zero.
KahlerPotential linear_oracle(const BundleSetup& bundle, const VolumeSpec& theta);

/// CSV with header t,F,residual_linf,margin,wall_ms.
void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& trace);

} // namespace momentlab
