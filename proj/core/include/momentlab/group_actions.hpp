#pragma once

#include <momentlab/connection.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace momentlab {

/// Element of Lie(G): an S¹-invariant vector field on the principal bundle,
/// stored as its pushforward v to the base and its pairing g = A_ref(η) with
/// the reference connection. For A = A_ref + a, A(η) = g + a(v).
struct InvariantField {
    VectorField v;
    ScalarField g;

    static InvariantField vertical(ScalarField g);
    static InvariantField reference_horizontal(VectorField v);
};

/// f = exp(2πi (χ + winding·x)), an element of Map(M, S¹).
struct GaugeTransformation {
    ScalarField chi;
    std::vector<int> winding;

    static GaugeTransformation periodic(ScalarField chi);
    static GaugeTransformation pure_winding(const Grid& grid, std::vector<int> winding);

    /// d χ_tot = dχ + Σ m_i dx_i.
    DifferentialForm phase_derivative() const;
};

/// Pointwise product of gauge transformations (phases add).
GaugeTransformation operator+(const GaugeTransformation& lhs, const GaugeTransformation& rhs);

/// Class in H¹(M,R)/H¹(M,Z). `coefficients` is a lift; `reduced()` the
/// representative in [0, 1)^{2n}.
struct FibreClass {
    std::vector<double> coefficients;

    std::vector<double> reduced(double snap = 1e-12) const;
    /// Equal modulo Z^{2n} within tol.
    bool equivalent(const FibreClass& other, double tol = 1e-10) const;
};

ScalarField pair_connection(const RelativeConnection& connection, const InvariantField& eta);

/// ρ_A(η) = d(A(η)) + ι_v ω_A.
DifferentialForm infinitesimal_action(const RelativeConnection& connection, const InvariantField& eta);

/// ⟨μ(A), η⟩ = 1/n! ∫ A(η) ω_Aⁿ.
double moment_pairing(const RelativeConnection& connection, const InvariantField& eta);

struct MomentIdentityProbe {
    double residual;       // at ε
    double residual_half;  // at ε/2
    double order;          // log2(residual / residual_half)
    double margin;         // min symplectic margin over the probes A ± εb
    double rounding_floor; // estimated cancellation error of the difference quotient at ε
};

/// Compares the central difference of ⟨μ, η⟩ along b with Ω_A(b, ρ_A(η)).
MomentIdentityProbe moment_identity_residual(const RelativeConnection& connection, const DifferentialForm& b,
                                             const InvariantField& eta, double epsilon);

/// ν(A) = ω_Aⁿ / n!.
DifferentialForm volume_density(const RelativeConnection& connection);

/// a ↦ a + dχ_tot; the curvature is unchanged and the H¹ class shifts by +winding.
RelativeConnection gauge_act(const GaugeTransformation& f, const RelativeConnection& connection);

/// harmonic_part(a − a₀) for connections with equal curvature.
FibreClass fibre_class(const RelativeConnection& connection, const RelativeConnection& base);

/// 1/(n-1)! ∫ α ∧ β ∧ c₁(L)^{n-1} for constant 1-forms α, β.
double fibre_pairing(std::span<const double> alpha, std::span<const double> beta, const BundleSetup& bundle);

/// Θ(γ, γ′) = 1/(n-1)! ∫ a ∧ a′ ∧ ω^{n-1} with minimal-norm primitives.
/// Requires n = 2, exact γ, γ′ and γ∧ω = γ′∧ω = 0 within 1e-8.
double theta_pairing(const DifferentialForm& omega, const DifferentialForm& gamma,
                     const DifferentialForm& gamma_prime);

/// Same pairing with caller-chosen primitives; no tangency checks.
double theta_pairing_from_primitives(const DifferentialForm& omega, const DifferentialForm& a,
                                     const DifferentialForm& a_prime);

/// η = (v, g) with ι_v ω_A = a and A(η) = 0, so ρ_A(η) = a.
InvariantField horizontal_preimage(const RelativeConnection& connection, const DifferentialForm& a);

struct SeparationWitness {
    InvariantField eta;
    double gap;             // ⟨μ(A), η⟩
    double other_pairing;   // ⟨μ(A′), η⟩, zero by construction
};

/// η = A′-horizontal lift of (a − a′)^♯; separates μ(A) from μ(A′).
SeparationWitness separation_witness(const RelativeConnection& connection, const RelativeConnection& other);

/// JSON record {name, inputs_hash, residual, order, margin}.
struct ResidualRecord {
    std::string name;
    std::uint64_t inputs_hash = 0;
    double residual = 0.0;
    double order = 0.0;
    double margin = 0.0;
};

nlohmann::json to_json(const ResidualRecord& record);

/// FNV-1a over the raw sample bytes of the given fields.
std::uint64_t hash_fields(std::initializer_list<const ScalarField*> fields);
std::uint64_t hash_form(const DifferentialForm& form, std::uint64_t seed = 0xcbf29ce484222325ULL);

} // namespace momentlab
