#pragma once

#include <momentlab/forms.hpp>

#include <filesystem>
#include <memory>
#include <vector>

namespace momentlab {

/// Hermitian line bundle L → T^{2n} with a constant reference curvature.
///
/// `chern_data` lists the integer coefficients of ω_ref against
/// form_basis(2n, 2). The reference must be non-degenerate with positive
/// Pfaffian (orientation dx1∧…∧dx_{2n}).
class BundleSetup {
public:
    BundleSetup(const Grid& grid, std::vector<int> chern_data);

    /// ω_ref = dx1∧dx2 on T², dx1∧dx2 + dx3∧dx4 on T⁴.
    static std::shared_ptr<const BundleSetup> standard(const Grid& grid);

    const Grid& grid() const noexcept { return grid_; }
    int half_dim() const noexcept { return grid_.half_dim(); }
    const std::vector<int>& chern_data() const noexcept { return chern_data_; }
    const DifferentialForm& reference_curvature() const noexcept { return reference_; }
    /// ∫ ω_ref^n / n!.
    double volume() const noexcept { return volume_; }

private:
    Grid grid_;
    std::vector<int> chern_data_;
    DifferentialForm reference_;
    double volume_;
};

using BundlePtr = std::shared_ptr<const BundleSetup>;

/// Unitary connection A = A_ref + a, stored as the real 1-form a.
class RelativeConnection {
public:
    RelativeConnection(BundlePtr bundle, DifferentialForm offset);
    static RelativeConnection reference(BundlePtr bundle);

    const BundleSetup& bundle() const noexcept { return *bundle_; }
    const BundlePtr& bundle_ptr() const noexcept { return bundle_; }
    const Grid& grid() const noexcept { return bundle_->grid(); }
    int half_dim() const noexcept { return bundle_->half_dim(); }
    const DifferentialForm& offset() const noexcept { return offset_; }

    RelativeConnection with_offset(DifferentialForm offset) const { return {bundle_, std::move(offset)}; }
    /// A + t·b.
    RelativeConnection shifted(const DifferentialForm& direction, double t) const;

private:
    BundlePtr bundle_;
    DifferentialForm offset_;
};

/// ω_A = ω_ref + da.
DifferentialForm curvature(const RelativeConnection& connection);

struct SymplecticCheck {
    bool symplectic;
    double margin;
};

/// Pointwise positivity density: the dx1∧dx2 coefficient (n = 1) or the
/// Pfaffian of the coefficient matrix (n = 2).
ScalarField symplectic_density(const DifferentialForm& omega);

/// Tests closedness (residual < 1e-8, else DomainError) and reports the
/// minimum of symplectic_density as margin.
SymplecticCheck is_symplectic(const DifferentialForm& omega);

/// Throws NotSymplecticError unless A ∈ S; returns ω_A.
DifferentialForm require_symplectic(const RelativeConnection& connection, const char* context);

/// Ω_A(a, b) = 1/(n-1)! ∫ a ∧ b ∧ ω_A^{n-1}.
double omega_pairing(const RelativeConnection& connection, const DifferentialForm& a,
                     const DifferentialForm& b);

/// Standard rotation J dx_{2j-1} = dx_{2j}, J dx_{2j} = -dx_{2j-1} on 1-forms.
DifferentialForm apply_standard_j(const DifferentialForm& a);

/// J_A a for the almost complex structure compatible with ω_A obtained by
/// pointwise polar decomposition of the coefficient matrix (n = 2); the
/// standard rotation for n = 1.
DifferentialForm apply_compatible_j(const RelativeConnection& connection, const DifferentialForm& a);

/// |a|² in the metric g_A(u, w) = ω_A(u, J_A w), pointwise.
ScalarField compatible_norm_sq(const RelativeConnection& connection, const DifferentialForm& a);

/// 1/(n-2)! ∫ (da∧b∧c + db∧c∧a + dc∧a∧b) ∧ ω_A^{n-2}; exactly 0 for n = 1.
double d_omega_residual(const RelativeConnection& connection, const DifferentialForm& a,
                        const DifferentialForm& b, const DifferentialForm& c);

/// L∞ norm of α(v) βⁿ − n α ∧ ι_vβ ∧ β^{n-1}.
double contraction_identity_residual(const DifferentialForm& alpha, const DifferentialForm& beta,
                                     const VectorField& v);

/// Connection files: the offset as a field file whose sidecar also carries
/// {half_dim, resolution, chern_data}.
void write_connection(const std::filesystem::path& stem, const RelativeConnection& connection);
RelativeConnection read_connection(const std::filesystem::path& stem);

double factorial(int n) noexcept;

} // namespace momentlab
