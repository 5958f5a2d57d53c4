#pragma once

#include "generators.hpp"

#include <momentlab/forms.hpp>

#include <array>
#include <complex>
#include <functional>
#include <vector>

// Reference computations that avoid the library's algorithms: analytic
// derivatives of trigonometric polynomials, explicit permutation signs,
// closed-form determinants and contour integrals.
namespace momentlab::testing {

/// Parity of the permutation sorting `values` (distinct entries), by cycle count.
int permutation_sign(std::vector<int> values);

/// Pointwise F ∧ G from explicit shuffles with permutation_sign.
DifferentialForm naive_wedge(const DifferentialForm& f, const DifferentialForm& g);

/// Exact dF sampled on the grid, from analytic derivatives.
DifferentialForm analytic_d(const TrigForm& form, const Grid& grid);

/// Pfaffian of the coefficient matrix of a 2-form on R⁴ (basis order).
double pfaffian4(std::span<const double> c);

/// Monge–Ampère density det(I − H/π) with H_{jk} = φ_{z_j z̄_k} of the flat
/// Kähler form, evaluated analytically at x.
double ma_density_analytic(const TrigPoly& phi, int half_dim, std::span<const double> x);

/// ρ_A(η) for η = (v constant, g) from the flow of η: the central difference of
/// translates of a plus dg + ι_v ω_ref, Richardson-extrapolated in t.
DifferentialForm translation_action(const TrigForm& a, const TrigPoly& g, std::span<const double> v,
                                    const DifferentialForm& omega_ref, const Grid& grid, double t);

/// Contour integral of A = Im⟨z,w⟩/2π around the image on S³ of the square
/// [−h, h]² in span(u, w) at z, divided by the square's area 4h², and
/// Richardson-extrapolated from h and h/2. Tends to dA(u, w).
double plaquette_curvature(const C2& z, const C2& u, const C2& w, double h);

/// (R(x))^steps for the classical RK4 stability polynomial R(x) = Σ_{j≤4} x^j/j!.
std::complex<double> rk4_propagator(std::complex<double> x, int steps);

} // namespace momentlab::testing
