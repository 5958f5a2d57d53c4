#include <momentlab/error.hpp>
#include <momentlab/random_fields.hpp>

#include <cmath>
#include <numbers>

namespace momentlab {

double uniform(Rng& rng, double lo, double hi)
{
    // 53 random bits mapped to [0, 1); independent of the standard
    // library's distribution implementation.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

ScalarField random_trig_field(const Grid& grid, Rng& rng, const TrigSpec& spec)
{
    if (spec.max_frequency < 1 || 4 * spec.max_frequency > grid.resolution()) {
        throw DomainError("random_trig_field: max_frequency must lie in [1, N/4]");
    }
    const int dim = grid.dim();
    std::vector<std::array<int, Grid::max_dim>> ks;
    std::vector<double> amps;
    std::vector<double> phases;
    for (int m = 0; m < spec.modes; ++m) {
        std::array<int, Grid::max_dim> k{};
        bool nonzero = false;
        while (!nonzero) {
            for (int a = 0; a < dim; ++a) {
                const auto r = static_cast<int>(rng() % static_cast<std::uint64_t>(2 * spec.max_frequency + 1));
                k[static_cast<std::size_t>(a)] = r - spec.max_frequency;
                nonzero = nonzero || k[static_cast<std::size_t>(a)] != 0;
            }
        }
        ks.push_back(k);
        amps.push_back(uniform(rng, -spec.amplitude, spec.amplitude));
        phases.push_back(uniform(rng, 0.0, 2.0 * std::numbers::pi));
    }
    const double mean = spec.include_mean ? uniform(rng, -spec.amplitude, spec.amplitude) : 0.0;
    ScalarField f(grid, mean);
    for (std::size_t p = 0; p < grid.point_count(); ++p) {
        const auto idx = grid.indices(p);
        double v = 0.0;
        for (std::size_t m = 0; m < ks.size(); ++m) {
            // integer phase keeps the argument exact modulo N
            long long kx = 0;
            for (int a = 0; a < dim; ++a) kx += static_cast<long long>(ks[m][static_cast<std::size_t>(a)]) * idx[static_cast<std::size_t>(a)];
            const double arg = 2.0 * std::numbers::pi * static_cast<double>(kx % grid.resolution()) / grid.resolution();
            v += amps[m] * std::cos(arg + phases[m]);
        }
        f[p] += v;
    }
    return f;
}

DifferentialForm random_form(const Grid& grid, int degree, Rng& rng, const TrigSpec& spec)
{
    DifferentialForm out(grid, degree);
    for (std::size_t c = 0; c < out.component_count(); ++c) out.component(c) = random_trig_field(grid, rng, spec);
    return out;
}

VectorField random_vector_field(const Grid& grid, Rng& rng, const TrigSpec& spec)
{
    VectorField out(grid);
    for (int i = 0; i < grid.dim(); ++i) out.component(i) = random_trig_field(grid, rng, spec);
    return out;
}

} // namespace momentlab
