#pragma once

#include <array>
#include <complex>

// The Hopf bundle S³ → S² as a prequantum circle bundle. Points of S³ are
// unit vectors in ℂ², the base carries ω = σ/4π (total area 1), and the
// connection form is A(w) = Im⟨z, w⟩ / 2π with ⟨z, w⟩ = z̄₁w₁ + z̄₂w₂.
namespace momentlab::weinstein {

using C2 = std::array<std::complex<double>, 2>;
using R3 = std::array<double, 3>;

struct PrequantumPoint {
    C2 z;

    /// Projects onto the unit sphere; throws DomainError for z = 0.
    static PrequantumPoint normalized(const C2& z);
    double norm_sq() const noexcept;
};

std::complex<double> hermitian(const C2& a, const C2& b) noexcept;

/// p(z) = (2Re(z̄₁z₂), 2Im(z̄₁z₂), |z₁|² − |z₂|²).
R3 hopf_projection(const PrequantumPoint& z) noexcept;
/// dp_z(w).
R3 hopf_pushforward(const PrequantumPoint& z, const C2& w) noexcept;

/// A_z(w); throws DomainError when w is not tangent to S³ at z.
double hopf_connection(const PrequantumPoint& z, const C2& w);

/// V(z) = 2πiz, the period-1 fibre generator with A(V) = 1.
C2 vertical_generator(const PrequantumPoint& z) noexcept;

/// Unique A-horizontal w with dp_z(w) = v, for v tangent to S² at p(z).
/// The horizontal space at z is spanned by z⊥ = (−z̄₂, z̄₁) and iz⊥.
C2 horizontal_lift(const PrequantumPoint& z, const R3& v);

/// ω(u, w) at x for u, w tangent at x.
double area_form(const R3& x, const R3& u, const R3& w) noexcept;

/// Rotation about a unit axis at `speed` turns per unit time, with Hamiltonian
/// h(x) = speed·(axis·x/2 + offset). offset = 0 is the mean-zero normalization.
struct Hamiltonian {
    R3 axis;
    double speed = 1.0;
    double offset = 0.0;

    double value(const R3& x) const noexcept;
    /// v(x) = 2π·speed·(axis × x), satisfying ι_v ω = dh.
    R3 field(const R3& x) const noexcept;
    /// dh(x) applied to u.
    double differential(const R3& x, const R3& u) const noexcept;
};

/// Normalizes the axis; throws DomainError for a zero axis.
Hamiltonian rotation_hamiltonian(const R3& axis, double speed = 1.0, double offset = 0.0);

/// η(z) = horizontal lift of v(p(z)) − h(p(z))·V(z).
C2 lift_generator(const Hamiltonian& h, const PrequantumPoint& z);

} // namespace momentlab::weinstein
