#include <momentlab/connection.hpp>
#include <momentlab/error.hpp>
#include <momentlab/field_io.hpp>

#include <Eigen/Dense>

#include <cmath>

namespace momentlab {

double factorial(int n) noexcept
{
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

namespace {

DifferentialForm reference_from_chern(const Grid& grid, const std::vector<int>& chern)
{
    if (chern.size() != binomial(grid.dim(), 2)) {
        throw DomainError("BundleSetup: chern_data must have C(2n, 2) entries");
    }
    std::vector<double> coeffs(chern.begin(), chern.end());
    return DifferentialForm::constant(grid, 2, coeffs);
}

// Antisymmetric coefficient matrix of a 2-form at one point.
Eigen::Matrix4d coefficient_matrix(const DifferentialForm& omega, std::size_t p)
{
    Eigen::Matrix4d w = Eigen::Matrix4d::Zero();
    const int dim = omega.grid().dim();
    for (std::size_t c = 0; c < omega.component_count(); ++c) {
        const auto axes = mask_axes(omega.mask(c));
        w(axes[0], axes[1]) = omega.component(c)[p];
        w(axes[1], axes[0]) = -omega.component(c)[p];
    }
    if (dim == 2) {
        w(2, 3) = 1.0;
        w(3, 2) = -1.0;
    }
    return w;
}

// Pointwise J (acting on 1-form coefficient vectors) and the inverse metric
// on 1-forms, from the polar decomposition W = -J_vec P with P = sqrt(-W²).
struct CompatibleFrame {
    Eigen::Matrix4d j_forms;
    Eigen::Matrix4d inverse_metric;
};

CompatibleFrame compatible_frame(const Eigen::Matrix4d& w)
{
    const Eigen::Matrix4d s = -(w * w);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(s);
    const Eigen::Vector4d lambda = eig.eigenvalues();
    if (lambda.minCoeff() <= 0.0) throw NotSymplecticError("compatible J: degenerate 2-form", lambda.minCoeff());
    const Eigen::Matrix4d p_inv =
        eig.eigenvectors() * lambda.cwiseSqrt().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
    return {-p_inv * w, p_inv};
}

} // namespace

BundleSetup::BundleSetup(const Grid& grid, std::vector<int> chern_data)
    : grid_(grid), chern_data_(std::move(chern_data)), reference_(reference_from_chern(grid_, chern_data_))
{
    const double density = symplectic_density(reference_)[0];
    if (density <= 0.0) {
        throw NotSymplecticError("BundleSetup: reference curvature is not positively non-degenerate", density);
    }
    volume_ = density;
}

BundlePtr BundleSetup::standard(const Grid& grid)
{
    if (grid.half_dim() == 1) return std::make_shared<const BundleSetup>(grid, std::vector<int>{1});
    return std::make_shared<const BundleSetup>(grid, std::vector<int>{1, 0, 0, 0, 0, 1});
}

RelativeConnection::RelativeConnection(BundlePtr bundle, DifferentialForm offset)
    : bundle_(std::move(bundle)), offset_(std::move(offset))
{
    if (!bundle_) throw DomainError("RelativeConnection: null bundle");
    if (offset_.degree() != 1) throw DomainError("RelativeConnection: offset must be a 1-form");
    require_same_grid(bundle_->grid(), offset_.grid(), "RelativeConnection");
}

RelativeConnection RelativeConnection::reference(BundlePtr bundle)
{
    const Grid grid = bundle->grid();
    return {std::move(bundle), DifferentialForm(grid, 1)};
}

RelativeConnection RelativeConnection::shifted(const DifferentialForm& direction, double t) const
{
    DifferentialForm a = offset_;
    a += t * DifferentialForm(direction);
    return {bundle_, std::move(a)};
}

DifferentialForm curvature(const RelativeConnection& connection)
{
    return connection.bundle().reference_curvature() + exterior_derivative(connection.offset());
}

ScalarField symplectic_density(const DifferentialForm& omega)
{
    if (omega.degree() != 2) throw DomainError("symplectic_density: expected a 2-form");
    if (omega.grid().half_dim() == 1) return omega.component(0);
    // Pf = w12 w34 − w13 w24 + w14 w23 in form_basis order
    return omega.component(0) * omega.component(5) - omega.component(1) * omega.component(4)
           + omega.component(2) * omega.component(3);
}

SymplecticCheck is_symplectic(const DifferentialForm& omega)
{
    if (omega.degree() != 2) throw DomainError("is_symplectic: expected a 2-form");
    if (omega.grid().dim() > 2) {
        const double closed = exterior_derivative(omega).max_abs();
        if (closed >= 1e-8) throw DomainError("is_symplectic: 2-form is not closed (|dω| = " + std::to_string(closed) + ")");
    }
    const double margin = symplectic_density(omega).min();
    return {margin > 0.0, margin};
}

DifferentialForm require_symplectic(const RelativeConnection& connection, const char* context)
{
    DifferentialForm omega = curvature(connection);
    const double margin = symplectic_density(omega).min();
    if (!(margin > 0.0)) throw NotSymplecticError(std::string(context) + ": connection curvature is not symplectic", margin);
    return omega;
}

double omega_pairing(const RelativeConnection& connection, const DifferentialForm& a, const DifferentialForm& b)
{
    const int n = connection.half_dim();
    const DifferentialForm omega = require_symplectic(connection, "omega_pairing");
    DifferentialForm ab = wedge(a, b);
    if (n > 1) ab = wedge(ab, wedge_power(omega, n - 1));
    return integrate(ab) / factorial(n - 1);
}

DifferentialForm apply_standard_j(const DifferentialForm& a)
{
    if (a.degree() != 1) throw DomainError("apply_standard_j: expected a 1-form");
    DifferentialForm out(a.grid(), 1);
    for (int j = 0; j < a.grid().half_dim(); ++j) {
        const auto x = static_cast<std::size_t>(2 * j);
        out.component(x + 1) = a.component(x);
        out.component(x) = -ScalarField(a.component(x + 1));
    }
    return out;
}

DifferentialForm apply_compatible_j(const RelativeConnection& connection, const DifferentialForm& a)
{
    if (a.degree() != 1) throw DomainError("apply_compatible_j: expected a 1-form");
    const DifferentialForm omega = require_symplectic(connection, "apply_compatible_j");
    if (connection.half_dim() == 1) return apply_standard_j(a);
    DifferentialForm out(a.grid(), 1);
    for (std::size_t p = 0; p < a.grid().point_count(); ++p) {
        const auto frame = compatible_frame(coefficient_matrix(omega, p));
        Eigen::Vector4d v;
        for (int i = 0; i < 4; ++i) v(i) = a.component(static_cast<std::size_t>(i))[p];
        const Eigen::Vector4d jv = frame.j_forms * v;
        for (int i = 0; i < 4; ++i) out.component(static_cast<std::size_t>(i))[p] = jv(i);
    }
    return out;
}

ScalarField compatible_norm_sq(const RelativeConnection& connection, const DifferentialForm& a)
{
    if (a.degree() != 1) throw DomainError("compatible_norm_sq: expected a 1-form");
    const DifferentialForm omega = require_symplectic(connection, "compatible_norm_sq");
    ScalarField out(a.grid());
    if (connection.half_dim() == 1) {
        // g_A = w · flat on vectors, so w⁻¹ · flat on 1-forms
        out = pointwise_norm_sq(a);
        out /= omega.component(0);
        return out;
    }
    for (std::size_t p = 0; p < a.grid().point_count(); ++p) {
        const auto frame = compatible_frame(coefficient_matrix(omega, p));
        Eigen::Vector4d v;
        for (int i = 0; i < 4; ++i) v(i) = a.component(static_cast<std::size_t>(i))[p];
        out[p] = v.dot(frame.inverse_metric * v);
    }
    return out;
}

double d_omega_residual(const RelativeConnection& connection, const DifferentialForm& a,
                        const DifferentialForm& b, const DifferentialForm& c)
{
    const int n = connection.half_dim();
    if (n == 1) return 0.0;
    const DifferentialForm omega = curvature(connection);
    DifferentialForm sum = wedge(wedge(exterior_derivative(a), b), c);
    sum += wedge(wedge(exterior_derivative(b), c), a);
    sum += wedge(wedge(exterior_derivative(c), a), b);
    if (n > 2) sum = wedge(sum, wedge_power(omega, n - 2));
    return integrate(sum) / factorial(n - 2);
}

double contraction_identity_residual(const DifferentialForm& alpha, const DifferentialForm& beta,
                                     const VectorField& v)
{
    if (alpha.degree() != 1 || beta.degree() != 2) {
        throw DomainError("contraction_identity_residual: need a 1-form and a 2-form");
    }
    const int n = alpha.grid().half_dim();
    const DifferentialForm beta_n = wedge_power(beta, n);
    DifferentialForm lhs = evaluate(alpha, v) * beta_n;
    DifferentialForm rhs = wedge(alpha, contract(v, beta));
    if (n > 1) rhs = wedge(rhs, wedge_power(beta, n - 1));
    rhs *= static_cast<double>(n);
    return (lhs - rhs).max_abs();
}

void write_connection(const std::filesystem::path& stem, const RelativeConnection& connection)
{
    io::write_field(stem, connection.offset(), {{"chern_data", connection.bundle().chern_data()}});
}

RelativeConnection read_connection(const std::filesystem::path& stem)
{
    auto loaded = io::read_field(stem);
    if (!loaded.sidecar.contains("chern_data")) throw IoError("connection sidecar missing chern_data");
    if (loaded.form.degree() != 1) throw IoError("connection file must hold a 1-form");
    auto bundle = std::make_shared<const BundleSetup>(loaded.form.grid(),
                                                      loaded.sidecar["chern_data"].get<std::vector<int>>());
    return {std::move(bundle), std::move(loaded.form)};
}

} // namespace momentlab
