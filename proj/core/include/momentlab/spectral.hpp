#pragma once

#include <momentlab/scalar_field.hpp>

#include <array>
#include <vector>

namespace momentlab::spectral {

// Fourier-space operators on periodic ScalarFields. Odd derivatives drop the
// Nyquist mode, so products of first derivatives commute exactly up to
// rounding and d∘d vanishes at machine precision.

ScalarField partial_derivative(const ScalarField& f, int axis);

/// All first partials from a single forward transform.
std::vector<ScalarField> gradient(const ScalarField& f);

/// Second partials ∂_a∂_b f for the requested (a, b) pairs, sharing one
/// forward transform.
std::vector<ScalarField> second_derivatives(const ScalarField& f,
                                            std::span<const std::array<int, 2>> pairs);

/// Linear combinations Σ_u weights[r][u] ∂_a∂_b f over pairs[u], one per row
/// r, each costing a single inverse transform.
std::vector<ScalarField> second_derivative_combinations(const ScalarField& f,
                                                        std::span<const std::array<int, 2>> pairs,
                                                        const std::vector<std::vector<double>>& weights);

/// Flat Laplacian Σ ∂_i² f.
ScalarField laplacian(const ScalarField& f);

/// Solves -Σ ∂_i² u = f for the mean-zero u. The mean of f is ignored.
ScalarField inverse_laplacian(const ScalarField& f);

/// Largest eigenvalue of the grid's positive Laplacian, (2π·N/2)².
double laplacian_max_eigenvalue(const Grid& grid) noexcept;

/// Largest |k_i| (over axes) carrying a Fourier coefficient above `threshold`
/// times the maximal coefficient. Used to enforce band limits in tests.
int bandwidth(const ScalarField& f, double threshold = 1e-12);

} // namespace momentlab::spectral
