#pragma once

#include <momentlab/group_actions.hpp>

namespace momentlab {

// Kähler geometry on the flat torus with the standard complex structure
// z_j = x_{2j-1} + i x_{2j}.

/// (i/2π) ∂̄∂φ as a real 2-form, assembled from the complex Hessian
/// φ_{z_j z̄_k} and the complex wedges dz̄_k ∧ dz_j.
DifferentialForm ddbar_form(const ScalarField& phi);

/// ω + (i/2π) ∂̄∂φ. For n = 1 this is ω − (Δφ/4π) dV.
DifferentialForm kahler_form(const ScalarField& phi, const DifferentialForm& omega);

/// e^φ · A in the real normalization: a ↦ a − (1/4π) J dφ.
RelativeConnection complex_gauge_act(const ScalarField& phi, const RelativeConnection& connection);

/// f = exp(φ + 2πi χ_tot) ∈ Map(M, C*).
struct ComplexGaugeTransformation {
    ScalarField log_modulus;
    GaugeTransformation phase;
};

/// General complexified action f · A = A + f∂̄(f⁻¹) − f̄∂(f̄⁻¹), split into its
/// unitary part (identical to gauge_act) and its modulus part (complex_gauge_act).
RelativeConnection complex_gauge_act(const ComplexGaugeTransformation& f, const RelativeConnection& connection);

} // namespace momentlab
