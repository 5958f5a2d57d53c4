#include <momentlab/calabi_flow.hpp>
#include <momentlab/error.hpp>
#include <momentlab/spectral.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>

namespace momentlab {

namespace {

void require_unit_volume(const BundleSetup& bundle, const char* context)
{
    if (std::abs(bundle.volume() - 1.0) > 1e-12) {
        throw DomainError(std::string(context) + ": prescribed-volume problems need unit Chern data");
    }
}

// ∫ φ (ρ − θ) dV
double energy_integrand(const ScalarField& phi, const ScalarField& rho, const VolumeSpec& theta)
{
    return (phi * (rho - theta.density())).mean();
}

ScalarField velocity_from_density(const ScalarField& rho, const VolumeSpec& theta)
{
    ScalarField v = rho / theta.density();
    v -= 1.0;
    v *= -1.0;
    return v;
}

// F from a precomputed ρ(φ); ρ(0) is the constant reference density.
double kempf_ness_given(const BundleSetup& bundle, const ScalarField& phi, const ScalarField& rho_at_one,
                        const VolumeSpec& theta)
{
    const ScalarField rho_at_zero(phi.grid(), bundle.volume());
    const double i0 = energy_integrand(phi, rho_at_zero, theta);
    const double i1 = energy_integrand(phi, rho_at_one, theta);
    if (bundle.half_dim() == 1) {
        // ρ(tφ) is affine in t, so the path stays in the cone iff its endpoint does
        if (!(rho_at_one.min() > 0.0)) throw KahlerConeError("kempf_ness: path exits the Kähler cone", rho_at_one.min());
        return 0.5 * (i0 + i1);
    }
    const ScalarField rho_half = monge_ampere_density(bundle, 0.5 * ScalarField(phi));
    // ρ(tφ) is quadratic in t pointwise; minimize it over [0, 1]
    double path_margin = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < phi.size(); ++p) {
        const double r0 = rho_at_zero[p];
        const double rh = rho_half[p];
        const double r1 = rho_at_one[p];
        const double b = -3.0 * r0 + 4.0 * rh - r1;
        const double a = 2.0 * r0 - 4.0 * rh + 2.0 * r1;
        double m = std::min(r0, r1);
        if (a > 0.0) {
            const double t = -b / (2.0 * a);
            if (t > 0.0 && t < 1.0) m = std::min(m, r0 + t * (b + a * t));
        }
        path_margin = std::min(path_margin, m);
    }
    if (!(path_margin > 0.0)) throw KahlerConeError("kempf_ness: path exits the Kähler cone", path_margin);
    const double ih = energy_integrand(phi, rho_half, theta);
    return (i0 + 4.0 * ih + i1) / 6.0;
}

} // namespace

VolumeSpec::VolumeSpec(ScalarField density) : density_(std::move(density))
{
    const double lo = density_.min();
    if (!(lo > 0.0)) throw DomainError("VolumeSpec: density must be positive (min " + std::to_string(lo) + ")");
    const double total = density_.mean();
    if (std::abs(total - 1.0) > 1e-12) {
        throw DomainError("VolumeSpec: density must integrate to 1 (got " + std::to_string(total) + ")");
    }
}

VolumeSpec VolumeSpec::flat(const Grid& grid) { return VolumeSpec(ScalarField(grid, 1.0)); }

VolumeSpec VolumeSpec::cosine_modes(const Grid& grid, const std::vector<CosineMode>& modes)
{
    ScalarField density(grid, 1.0);
    for (const auto& mode : modes) {
        if (static_cast<int>(mode.wavevector.size()) != grid.dim()) {
            throw DomainError("VolumeSpec::cosine_modes: wavevector must have 2n entries");
        }
        bool nonzero = false;
        for (int k : mode.wavevector) nonzero = nonzero || k != 0;
        if (!nonzero) throw DomainError("VolumeSpec::cosine_modes: zero wavevector changes the total volume");
        for (std::size_t p = 0; p < grid.point_count(); ++p) {
            const auto idx = grid.indices(p);
            long long kx = 0;
            for (int a = 0; a < grid.dim(); ++a) {
                kx += static_cast<long long>(mode.wavevector[static_cast<std::size_t>(a)]) * idx[static_cast<std::size_t>(a)];
            }
            const double arg = 2.0 * std::numbers::pi * static_cast<double>(kx % grid.resolution()) / grid.resolution();
            density[p] += mode.amplitude * std::cos(arg + mode.phase);
        }
    }
    return VolumeSpec(std::move(density));
}

ScalarField monge_ampere_density(const BundleSetup& bundle, const ScalarField& phi)
{
    require_same_grid(bundle.grid(), phi.grid(), "monge_ampere_density");
    const DifferentialForm omega = kahler_form(phi, bundle.reference_curvature());
    const int n = bundle.half_dim();
    if (n == 1) return omega.component(0);
    DifferentialForm top = wedge(omega, omega);
    ScalarField rho = top.component(0);
    rho *= 1.0 / factorial(n);
    return rho;
}

ScalarField ma_density(const BundleSetup& bundle, const ScalarField& phi)
{
    ScalarField rho = monge_ampere_density(bundle, phi);
    const double margin = rho.min();
    if (!(margin > 0.0)) throw KahlerConeError("ma_density: left the Kähler cone", margin);
    return rho;
}

ScalarField ma_density(const BundleSetup& bundle, const KahlerPotential& phi)
{
    return ma_density(bundle, phi.values());
}

KahlerPotential KahlerPotential::make(const BundleSetup& bundle, ScalarField phi)
{
    phi -= phi.mean();
    const double margin = monge_ampere_density(bundle, phi).min();
    if (!(margin > 0.0)) throw KahlerConeError("KahlerPotential: left the Kähler cone", margin);
    return KahlerPotential(std::move(phi), margin);
}

KahlerPotential KahlerPotential::zero(const BundleSetup& bundle)
{
    return make(bundle, ScalarField(bundle.grid()));
}

double kempf_ness(const BundleSetup& bundle, const ScalarField& phi, const VolumeSpec& theta)
{
    require_unit_volume(bundle, "kempf_ness");
    require_same_grid(phi.grid(), theta.grid(), "kempf_ness");
    return kempf_ness_given(bundle, phi, monge_ampere_density(bundle, phi), theta);
}

double kempf_ness(const BundleSetup& bundle, const KahlerPotential& phi, const VolumeSpec& theta)
{
    return kempf_ness(bundle, phi.values(), theta);
}

ScalarField kn_gradient(const BundleSetup& bundle, const ScalarField& phi, const VolumeSpec& theta)
{
    ScalarField g = ma_density(bundle, phi) / theta.density();
    g -= 1.0;
    return g;
}

double potential_inner_product(const ScalarField& f, const ScalarField& g, const VolumeSpec& theta)
{
    return (f * g * theta.density()).mean();
}

FlowState initial_state(const BundleSetup& bundle, const KahlerPotential& phi0, const VolumeSpec& theta)
{
    require_unit_volume(bundle, "initial_state");
    const ScalarField rho = ma_density(bundle, phi0);
    const double energy = kempf_ness_given(bundle, phi0.values(), rho, theta);
    const double residual = velocity_from_density(rho, theta).max_abs();
    return {phi0, 0.0, energy, residual, rho};
}

double stable_time_step(const Grid& grid, const VolumeSpec& theta)
{
    const double inv_theta_max = 1.0 / theta.density().min();
    return 0.8 * 4.0 * std::numbers::pi / (spectral::laplacian_max_eigenvalue(grid) * inv_theta_max);
}

FlowState flow_step(const BundleSetup& bundle, const FlowState& state, const VolumeSpec& theta, double dt)
{
    if (!(dt > 0.0)) throw DomainError("flow_step: dt must be positive");
    const ScalarField& phi = state.phi.values();
    auto velocity = [&](const ScalarField& p) {
        return velocity_from_density(monge_ampere_density(bundle, p), theta);
    };
    require_same_grid(state.density.grid(), phi.grid(), "flow_step");
    const ScalarField k1 = velocity_from_density(state.density, theta);
    const ScalarField k2 = velocity(ScalarField(phi).add_scaled(0.5 * dt, k1));
    const ScalarField k3 = velocity(ScalarField(phi).add_scaled(0.5 * dt, k2));
    const ScalarField k4 = velocity(ScalarField(phi).add_scaled(dt, k3));

    ScalarField next = phi;
    next.add_scaled(dt / 6.0, k1).add_scaled(dt / 3.0, k2).add_scaled(dt / 3.0, k3).add_scaled(dt / 6.0, k4);
    next -= next.mean();

    const ScalarField rho = monge_ampere_density(bundle, next);
    const double margin = rho.min();
    if (!(margin > 0.0)) {
        throw KahlerConeError("flow_step: potential left the Kähler cone; reduce dt", margin);
    }
    KahlerPotential potential(std::move(next), margin);
    const double energy = kempf_ness_given(bundle, potential.values(), rho, theta);
    const double residual = velocity_from_density(rho, theta).max_abs();
    return {std::move(potential), state.t + dt, energy, residual, rho};
}

FlowResult run_flow(const BundleSetup& bundle, const VolumeSpec& theta, const KahlerPotential& phi0,
                    const FlowOptions& options)
{
    if (!(options.tol > 0.0) || !(options.max_t > 0.0)) throw DomainError("run_flow: tol and max_t must be positive");
    const double dt = options.dt > 0.0 ? options.dt : stable_time_step(bundle.grid(), theta);
    const auto start = std::chrono::steady_clock::now();
    auto elapsed_ms = [&] {
        if (!options.record_wall_time) return 0.0;
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };

    FlowState state = initial_state(bundle, phi0, theta);
    std::vector<TraceRow> trace;
    trace.push_back({state.t, state.energy, state.residual, state.phi.margin(), elapsed_ms()});
    std::size_t steps = 0;
    while (state.residual >= options.tol) {
        if (state.t > options.max_t) {
            throw FlowDivergedError("run_flow: no convergence within max_t (residual "
                                        + std::to_string(state.residual) + ")",
                                    std::move(trace));
        }
        state = flow_step(bundle, state, theta, dt);
        ++steps;
        trace.push_back({state.t, state.energy, state.residual, state.phi.margin(), elapsed_ms()});
    }
    return {std::move(trace), state.phi, steps};
}

KahlerPotential linear_oracle(const BundleSetup& bundle, const VolumeSpec& theta)
{
    if (bundle.half_dim() != 1) throw DomainError("linear_oracle: only n = 1 is linear");
    require_unit_volume(bundle, "linear_oracle");
    ScalarField rhs = theta.density() - bundle.volume();
    rhs *= 4.0 * std::numbers::pi;
    ScalarField phi = spectral::inverse_laplacian(rhs);
    const double margin = monge_ampere_density(bundle, phi).min();
    if (!(margin > 0.0)) throw KahlerConeError("linear_oracle: θ too far from flat for n=1 cone", margin);
    return KahlerPotential::make(bundle, std::move(phi));
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& trace)
{
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string());
    out << "t,F,residual_linf,margin,wall_ms\n" << std::setprecision(17);
    for (const auto& r : trace) {
        out << r.t << ',' << r.energy << ',' << r.residual << ',' << r.margin << ',' << r.wall_ms << '\n';
    }
}

} // namespace momentlab
