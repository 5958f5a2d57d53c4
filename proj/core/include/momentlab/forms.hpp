#pragma once

#include <momentlab/scalar_field.hpp>

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace momentlab {

/// Increasing multi-index (i1 < ... < ik) encoded as a bitmask over axes.
using AxisMask = std::uint32_t;

/// Increasing multi-indices of the given degree in lexicographic order,
/// e.g. (0,1), (0,2), (0,3), (1,2), (1,3), (2,3) for dim 4, degree 2.
std::span<const AxisMask> form_basis(int dim, int degree);

/// Position of `mask` within form_basis(dim, popcount(mask)).
std::size_t basis_position(int dim, AxisMask mask);

/// Axes of a mask in increasing order.
std::vector<int> mask_axes(AxisMask mask);

/// Human-readable component name: "f" for degree 0, otherwise "dx1^dx3" (1-based).
std::string component_name(AxisMask mask);

std::size_t binomial(int n, int k) noexcept;

/// Degree-k form on a Grid; one ScalarField per increasing multi-index.
class DifferentialForm {
public:
    DifferentialForm(const Grid& grid, int degree);

    /// Wraps a 0-form.
    static DifferentialForm zero_form(ScalarField f);
    /// Form with constant coefficients, ordered as form_basis.
    static DifferentialForm constant(const Grid& grid, int degree, std::span<const double> coefficients);
    /// f dx_{axes[0]} ∧ ... ∧ dx_{axes[k-1]}; axes need not be sorted.
    static DifferentialForm monomial(ScalarField f, std::initializer_list<int> axes);
    /// 1-form Σ c_i dx_i.
    static DifferentialForm one_form(std::vector<ScalarField> components);

    const Grid& grid() const noexcept { return grid_; }
    int degree() const noexcept { return degree_; }
    std::size_t component_count() const noexcept { return components_.size(); }
    AxisMask mask(std::size_t i) const;

    ScalarField& component(std::size_t i) { return components_.at(i); }
    const ScalarField& component(std::size_t i) const { return components_.at(i); }
    /// Component for the sorted multi-index `axes`.
    ScalarField& at(std::initializer_list<int> axes);
    const ScalarField& at(std::initializer_list<int> axes) const;

    double max_abs() const noexcept;

    DifferentialForm& operator+=(const DifferentialForm& other);
    DifferentialForm& operator-=(const DifferentialForm& other);
    DifferentialForm& operator*=(double c) noexcept;
    /// Pointwise multiplication of every coefficient by a function.
    DifferentialForm& operator*=(const ScalarField& f);

private:
    void require_compatible(const DifferentialForm& other, const char* op) const;

    Grid grid_;
    int degree_;
    std::vector<ScalarField> components_;
};

DifferentialForm operator+(DifferentialForm a, const DifferentialForm& b);
DifferentialForm operator-(DifferentialForm a, const DifferentialForm& b);
DifferentialForm operator*(double c, DifferentialForm a);
DifferentialForm operator*(const ScalarField& f, DifferentialForm a);

/// Tangent vector field Σ v_i ∂/∂x_i.
class VectorField {
public:
    explicit VectorField(const Grid& grid);
    explicit VectorField(std::vector<ScalarField> components);
    /// Constant field with the given components.
    static VectorField constant(const Grid& grid, std::span<const double> components);

    const Grid& grid() const noexcept { return grid_; }
    int dim() const noexcept { return static_cast<int>(components_.size()); }
    ScalarField& component(int i) { return components_.at(static_cast<std::size_t>(i)); }
    const ScalarField& component(int i) const { return components_.at(static_cast<std::size_t>(i)); }
    double max_abs() const noexcept;

    VectorField& operator+=(const VectorField& other);
    VectorField& operator*=(double c) noexcept;

private:
    Grid grid_;
    std::vector<ScalarField> components_;
};

// ---------------------------------------------------------------------------
// Exterior calculus

/// d F, spectrally exact on band-limited data. Throws for top-degree input.
DifferentialForm exterior_derivative(const DifferentialForm& form);

/// Pointwise F ∧ G with the standard sign rules.
DifferentialForm wedge(const DifferentialForm& lhs, const DifferentialForm& rhs);

/// β^k (k ≥ 0); β^0 is the constant 0-form 1.
DifferentialForm wedge_power(const DifferentialForm& beta, int k);

/// ∫_M F for a top-degree form oriented by dx1∧...∧dx_{2n}.
double integrate(const DifferentialForm& form);

/// Interior product ι_v F.
DifferentialForm contract(const VectorField& v, const DifferentialForm& form);

/// α(v) for a 1-form α.
ScalarField evaluate(const DifferentialForm& one_form, const VectorField& v);

/// Flat codifferential δ = -Σ_i ι_{∂i} ∂_i, adjoint of d under the L² metric.
DifferentialForm codifferential(const DifferentialForm& form);

/// Minimal-L²-norm primitive a of an exact form G: da = G and δa = 0.
/// Throws DomainError if G is not closed or has non-zero harmonic
/// (constant) coefficients.
DifferentialForm hodge_primitive(const DifferentialForm& exact_form);

/// Constant Fourier coefficients of a 1-form, i.e. its class in H¹ ≅ R^{2n}.
std::vector<double> harmonic_part(const DifferentialForm& one_form);

/// Flat musical isomorphism a ↦ a^♯.
VectorField metric_dual(const DifferentialForm& one_form);
/// Flat musical isomorphism v ↦ v^♭.
DifferentialForm metric_flat(const VectorField& v);

/// Pointwise flat norm squared Σ a_I² of a form.
ScalarField pointwise_norm_sq(const DifferentialForm& form);

/// Hodge dual density: the single coefficient of a top-degree form.
const ScalarField& top_coefficient(const DifferentialForm& top_form);

} // namespace momentlab
