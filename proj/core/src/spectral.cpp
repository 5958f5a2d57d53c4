#include <momentlab/error.hpp>
#include <momentlab/spectral.hpp>

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace momentlab::spectral {

namespace {

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

RealBuffer alloc_real(std::size_t n) { return RealBuffer(fftw_alloc_real(n)); }
ComplexBuffer alloc_complex(std::size_t n) { return ComplexBuffer(fftw_alloc_complex(n)); }

// Plans for one (dim, N) pair. Execution goes through the new-array
// interface, which FFTW documents as thread-safe; only planning is locked.
struct Plan {
    int dim = 0;
    int n = 0;
    std::size_t real_size = 0;
    std::size_t complex_size = 0;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
    // Signed wavenumber of every half-spectrum entry, per axis.
    std::vector<std::vector<int>> wavenumbers;

    ~Plan()
    {
        if (forward) fftw_destroy_plan(forward);
        if (backward) fftw_destroy_plan(backward);
    }
};

std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

const Plan& plan_for(const Grid& grid)
{
    static std::map<std::pair<int, int>, std::unique_ptr<Plan>> cache;
    std::lock_guard lock(planner_mutex());
    auto key = std::make_pair(grid.dim(), grid.resolution());
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    auto plan = std::make_unique<Plan>();
    plan->dim = grid.dim();
    plan->n = grid.resolution();
    plan->real_size = grid.point_count();
    const std::size_t half = static_cast<std::size_t>(plan->n / 2 + 1);
    plan->complex_size = plan->real_size / static_cast<std::size_t>(plan->n) * half;

    std::vector<int> dims(static_cast<std::size_t>(plan->dim), plan->n);
    auto in = alloc_real(plan->real_size);
    auto out = alloc_complex(plan->complex_size);
    plan->forward = fftw_plan_dft_r2c(plan->dim, dims.data(), in.get(), out.get(), FFTW_ESTIMATE);
    plan->backward = fftw_plan_dft_c2r(plan->dim, dims.data(), out.get(), in.get(), FFTW_ESTIMATE);
    if (!plan->forward || !plan->backward) throw Error("FFTW planning failed");

    plan->wavenumbers.assign(static_cast<std::size_t>(plan->dim),
                             std::vector<int>(plan->complex_size));
    std::vector<std::size_t> extent(static_cast<std::size_t>(plan->dim),
                                    static_cast<std::size_t>(plan->n));
    extent.back() = half;
    for (std::size_t idx = 0; idx < plan->complex_size; ++idx) {
        std::size_t rest = idx;
        for (int axis = plan->dim - 1; axis >= 0; --axis) {
            const auto a = static_cast<std::size_t>(axis);
            const int j = static_cast<int>(rest % extent[a]);
            rest /= extent[a];
            plan->wavenumbers[a][idx] = (j <= plan->n / 2) ? j : j - plan->n;
        }
    }
    auto& ref = *plan;
    cache.emplace(key, std::move(plan));
    return ref;
}

struct Spectrum {
    const Plan* plan;
    ComplexBuffer data;
};

Spectrum forward(const ScalarField& f)
{
    const Plan& plan = plan_for(f.grid());
    auto in = alloc_real(plan.real_size);
    std::memcpy(in.get(), f.values().data(), plan.real_size * sizeof(double));
    Spectrum s{&plan, alloc_complex(plan.complex_size)};
    fftw_execute_dft_r2c(plan.forward, in.get(), s.data.get());
    return s;
}

// Consumes a half-spectrum buffer (c2r overwrites its input).
ScalarField inverse(const Grid& grid, const Plan& plan, fftw_complex* spectrum)
{
    auto out = alloc_real(plan.real_size);
    fftw_execute_dft_c2r(plan.backward, spectrum, out.get());
    ScalarField f(grid);
    const double scale = 1.0 / static_cast<double>(plan.real_size);
    for (std::size_t i = 0; i < plan.real_size; ++i) f[i] = out[i] * scale;
    return f;
}

// Multiplier for one first derivative: 2πik, zero at Nyquist.
inline std::complex<double> d_factor(int k, int n)
{
    if (2 * std::abs(k) == n) return {0.0, 0.0};
    return {0.0, 2.0 * std::numbers::pi * k};
}

template <class Multiplier>
ScalarField apply_multiplier(const Grid& grid, const Spectrum& s, Multiplier&& m)
{
    const Plan& plan = *s.plan;
    auto work = alloc_complex(plan.complex_size);
    for (std::size_t idx = 0; idx < plan.complex_size; ++idx) {
        const std::complex<double> c(s.data[idx][0], s.data[idx][1]);
        const std::complex<double> r = c * m(idx);
        work[idx][0] = r.real();
        work[idx][1] = r.imag();
    }
    return inverse(grid, plan, work.get());
}

void check_axis(const Grid& grid, int axis)
{
    if (axis < 0 || axis >= grid.dim()) throw DomainError("spectral: axis out of range");
}

} // namespace

ScalarField partial_derivative(const ScalarField& f, int axis)
{
    check_axis(f.grid(), axis);
    const auto s = forward(f);
    const auto& k = s.plan->wavenumbers[static_cast<std::size_t>(axis)];
    const int n = s.plan->n;
    return apply_multiplier(f.grid(), s, [&](std::size_t idx) { return d_factor(k[idx], n); });
}

std::vector<ScalarField> gradient(const ScalarField& f)
{
    const auto s = forward(f);
    const int n = s.plan->n;
    std::vector<ScalarField> out;
    out.reserve(static_cast<std::size_t>(f.grid().dim()));
    for (int axis = 0; axis < f.grid().dim(); ++axis) {
        const auto& k = s.plan->wavenumbers[static_cast<std::size_t>(axis)];
        out.push_back(apply_multiplier(f.grid(), s, [&](std::size_t idx) { return d_factor(k[idx], n); }));
    }
    return out;
}

std::vector<ScalarField> second_derivatives(const ScalarField& f,
                                            std::span<const std::array<int, 2>> pairs)
{
    const auto s = forward(f);
    const int n = s.plan->n;
    std::vector<ScalarField> out;
    out.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        check_axis(f.grid(), a);
        check_axis(f.grid(), b);
        const auto& ka = s.plan->wavenumbers[static_cast<std::size_t>(a)];
        const auto& kb = s.plan->wavenumbers[static_cast<std::size_t>(b)];
        out.push_back(apply_multiplier(f.grid(), s, [&](std::size_t idx) {
            return d_factor(ka[idx], n) * d_factor(kb[idx], n);
        }));
    }
    return out;
}

std::vector<ScalarField> second_derivative_combinations(const ScalarField& f,
                                                        std::span<const std::array<int, 2>> pairs,
                                                        const std::vector<std::vector<double>>& weights)
{
    for (const auto& [a, b] : pairs) {
        check_axis(f.grid(), a);
        check_axis(f.grid(), b);
    }
    const auto s = forward(f);
    const int n = s.plan->n;
    std::vector<ScalarField> out;
    out.reserve(weights.size());
    std::vector<double> symbol(s.plan->complex_size);
    for (const auto& row : weights) {
        if (row.size() != pairs.size()) throw DomainError("second_derivative_combinations: weight row size");
        std::fill(symbol.begin(), symbol.end(), 0.0);
        for (std::size_t u = 0; u < pairs.size(); ++u) {
            if (row[u] == 0.0) continue;
            const auto& ka = s.plan->wavenumbers[static_cast<std::size_t>(pairs[u][0])];
            const auto& kb = s.plan->wavenumbers[static_cast<std::size_t>(pairs[u][1])];
            for (std::size_t idx = 0; idx < symbol.size(); ++idx) {
                symbol[idx] += row[u] * (d_factor(ka[idx], n) * d_factor(kb[idx], n)).real();
            }
        }
        out.push_back(apply_multiplier(f.grid(), s, [&](std::size_t idx) { return std::complex<double>(symbol[idx], 0.0); }));
    }
    return out;
}

ScalarField laplacian(const ScalarField& f)
{
    const auto s = forward(f);
    const auto& plan = *s.plan;
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return apply_multiplier(f.grid(), s, [&](std::size_t idx) {
        double k2 = 0.0;
        for (const auto& k : plan.wavenumbers) k2 += static_cast<double>(k[idx]) * k[idx];
        return std::complex<double>(-two_pi * two_pi * k2, 0.0);
    });
}

ScalarField inverse_laplacian(const ScalarField& f)
{
    const auto s = forward(f);
    const auto& plan = *s.plan;
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return apply_multiplier(f.grid(), s, [&](std::size_t idx) {
        double k2 = 0.0;
        for (const auto& k : plan.wavenumbers) k2 += static_cast<double>(k[idx]) * k[idx];
        if (k2 == 0.0) return std::complex<double>(0.0, 0.0);
        return std::complex<double>(1.0 / (two_pi * two_pi * k2), 0.0);
    });
}

double laplacian_max_eigenvalue(const Grid& grid) noexcept
{
    const double k = std::numbers::pi * grid.resolution();
    return k * k;
}

int bandwidth(const ScalarField& f, double threshold)
{
    const auto s = forward(f);
    const auto& plan = *s.plan;
    double peak = 0.0;
    for (std::size_t idx = 0; idx < plan.complex_size; ++idx) {
        peak = std::max(peak, std::hypot(s.data[idx][0], s.data[idx][1]));
    }
    int band = 0;
    if (peak == 0.0) return 0;
    for (std::size_t idx = 0; idx < plan.complex_size; ++idx) {
        if (std::hypot(s.data[idx][0], s.data[idx][1]) <= threshold * peak) continue;
        for (const auto& k : plan.wavenumbers) band = std::max(band, std::abs(k[idx]));
    }
    return band;
}

} // namespace momentlab::spectral
