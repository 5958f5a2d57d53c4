#pragma once

#include <momentlab/forms.hpp>

#include <random>

namespace momentlab {

/// Pseudo-random generator used throughout; seeded explicitly everywhere.
using Rng = std::mt19937_64;
inline constexpr const char* rng_name = "mt19937_64";

/// Parameters for random trigonometric polynomials
/// f(x) = Σ_m c_m cos(2π k_m·x + φ_m) with 1 ≤ max|k_m,i| ≤ max_frequency.
struct TrigSpec {
    int modes = 4;
    int max_frequency = 2;
    double amplitude = 0.1;
    bool include_mean = false;
};

ScalarField random_trig_field(const Grid& grid, Rng& rng, const TrigSpec& spec = {});
DifferentialForm random_form(const Grid& grid, int degree, Rng& rng, const TrigSpec& spec = {});
VectorField random_vector_field(const Grid& grid, Rng& rng, const TrigSpec& spec = {});

/// Uniform double in [lo, hi).
double uniform(Rng& rng, double lo, double hi);

} // namespace momentlab
