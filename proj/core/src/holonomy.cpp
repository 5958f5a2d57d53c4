#include <momentlab/holonomy.hpp>
#include <momentlab/parallel.hpp>
#include <momentlab/random_fields.hpp>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace momentlab::weinstein {

namespace {

// Degree-one extension of η off S³, so RK4 stages see a field linear in |z|.
C2 generator_at(const Hamiltonian& h, const C2& z)
{
    const double r = std::sqrt(std::norm(z[0]) + std::norm(z[1]));
    const C2 eta = lift_generator(h, PrequantumPoint::normalized(z));
    return {r * eta[0], r * eta[1]};
}

C2 axpy(const C2& z, double c, const C2& k) noexcept { return {z[0] + c * k[0], z[1] + c * k[1]}; }

// Normalized Gaussian vector in C² (Box–Muller on our own uniform mapping),
// which is uniform on S³.
PrequantumPoint random_point(Rng& rng)
{
    auto gauss_pair = [&] {
        const double u = uniform(rng, 0.0, 1.0);
        const double r = std::sqrt(-2.0 * std::log1p(-u));
        const double t = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        return std::complex<double>(r * std::cos(t), r * std::sin(t));
    };
    C2 z{};
    do {
        const auto a = gauss_pair();
        const auto b = gauss_pair();
        z = C2{a, b};
    } while (std::norm(z[0]) + std::norm(z[1]) < 1e-6);
    return PrequantumPoint::normalized(z);
}

void check_segments(std::span<const LoopSpec> segments)
{
    if (segments.empty()) throw DomainError("loop: no segments");
}

} // namespace

int effective_substeps(const LoopSpec& loop) noexcept
{
    return loop.substeps > 0 ? loop.substeps : 1000 * std::max(1, std::abs(loop.turns));
}

PrequantumPoint integrate_loop(std::span<const LoopSpec> segments, const PrequantumPoint& z0)
{
    check_segments(segments);
    const double share = static_cast<double>(segments.size());
    PrequantumPoint z = z0;
    for (const auto& loop : segments) {
        if (loop.turns == 0) continue;
        // speed `share·turns` compresses a full loop into 1/share of unit time
        const Hamiltonian h = rotation_hamiltonian(loop.axis, share * loop.turns, loop.hamiltonian_shift);
        const int steps = effective_substeps(loop);
        const double dt = 1.0 / (share * steps);
        for (int s = 0; s < steps; ++s) {
            const C2 k1 = generator_at(h, z.z);
            const C2 k2 = generator_at(h, axpy(z.z, 0.5 * dt, k1));
            const C2 k3 = generator_at(h, axpy(z.z, 0.5 * dt, k2));
            const C2 k4 = generator_at(h, axpy(z.z, dt, k3));
            C2 next = z.z;
            for (int i = 0; i < 2; ++i) {
                next[static_cast<std::size_t>(i)] += dt / 6.0
                    * (k1[static_cast<std::size_t>(i)] + 2.0 * k2[static_cast<std::size_t>(i)]
                       + 2.0 * k3[static_cast<std::size_t>(i)] + k4[static_cast<std::size_t>(i)]);
            }
            z = PrequantumPoint::normalized(next);
        }
    }
    return z;
}

HolonomyResult loop_holonomy(std::span<const LoopSpec> segments, int samples, std::uint64_t seed)
{
    check_segments(segments);
    if (samples < 2) throw DomainError("loop_holonomy: need at least 2 samples");
    long steps = 0;
    for (const auto& loop : segments) {
        const int s = effective_substeps(loop);
        if (s < 1000 * std::abs(loop.turns)) {
            throw DomainError("loop_holonomy: substeps must be at least 1000 per turn (got "
                              + std::to_string(s) + " for " + std::to_string(loop.turns) + " turns)");
        }
        if (loop.turns != 0) steps += s;
    }

    Rng rng(seed);
    std::vector<PrequantumPoint> starts;
    for (int i = 0; i < samples; ++i) starts.push_back(random_point(rng));

    std::vector<std::complex<double>> phases(starts.size());
    parallel_for(starts.size(), [&](std::size_t i) {
        const PrequantumPoint end = integrate_loop(segments, starts[i]);
        phases[i] = hermitian(starts[i].z, end.z);
    });

    std::complex<double> mean = 0.0;
    for (const auto& p : phases) mean += p;
    mean /= static_cast<double>(phases.size());
    double variance = 0.0;
    for (const auto& p : phases) variance += std::norm(p - mean);
    variance /= static_cast<double>(phases.size() - 1);
    if (variance > 1e-8) {
        throw NumericalError("non-scalar time-1 map; increase substeps (variance "
                             + std::to_string(variance) + ")");
    }
    const int substeps = effective_substeps(segments.front());
    return {mean / std::abs(mean), variance, steps, substeps};
}

HolonomyResult loop_holonomy(const LoopSpec& loop, int samples, std::uint64_t seed)
{
    return loop_holonomy(std::span<const LoopSpec>(&loop, 1), samples, seed);
}

HolonomyResult weinstein_hom(std::span<const LoopSpec> segments, int samples, std::uint64_t seed)
{
    check_segments(segments);
    std::vector<LoopSpec> current(segments.begin(), segments.end());
    for (auto& loop : current) loop.substeps = effective_substeps(loop);

    std::vector<RefinementStep> trace;
    HolonomyResult previous = loop_holonomy(current, samples, seed);
    trace.push_back({previous.substeps, previous.phase});
    constexpr int max_doublings = 6;
    for (int d = 0; d < max_doublings; ++d) {
        for (auto& loop : current) loop.substeps *= 2;
        HolonomyResult refined = loop_holonomy(current, samples, seed);
        trace.push_back({refined.substeps, refined.phase});
        if (std::abs(refined.phase - previous.phase) < 1e-6) return refined;
        previous = refined;
    }
    std::ostringstream msg;
    msg << "weinstein_hom: phase did not stabilize after " << max_doublings << " doublings:";
    for (const auto& step : trace) msg << " [" << step.substeps << ": " << step.phase << "]";
    throw WeinsteinConvergenceError(msg.str(), std::move(trace));
}

HolonomyResult weinstein_hom(const LoopSpec& loop, int samples, std::uint64_t seed)
{
    return weinstein_hom(std::span<const LoopSpec>(&loop, 1), samples, seed);
}

nlohmann::json to_json(const LoopSpec& loop, const HolonomyResult& result)
{
    return {{"axis", loop.axis},
            {"turns", loop.turns},
            {"substeps", result.substeps},
            {"lambda_re", result.phase.real()},
            {"lambda_im", result.phase.imag()},
            {"variance", result.variance}};
}

} // namespace momentlab::weinstein
