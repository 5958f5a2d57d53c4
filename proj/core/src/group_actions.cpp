#include <momentlab/error.hpp>
#include <momentlab/group_actions.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <cstring>
#include <limits>

namespace momentlab {

InvariantField InvariantField::vertical(ScalarField g)
{
    const Grid grid = g.grid();
    return {VectorField(grid), std::move(g)};
}

InvariantField InvariantField::reference_horizontal(VectorField v)
{
    const Grid grid = v.grid();
    return {std::move(v), ScalarField(grid)};
}

GaugeTransformation GaugeTransformation::periodic(ScalarField chi)
{
    const int dim = chi.grid().dim();
    return {std::move(chi), std::vector<int>(static_cast<std::size_t>(dim), 0)};
}

GaugeTransformation GaugeTransformation::pure_winding(const Grid& grid, std::vector<int> winding)
{
    if (static_cast<int>(winding.size()) != grid.dim()) throw DomainError("pure_winding: need 2n integers");
    return {ScalarField(grid), std::move(winding)};
}

DifferentialForm GaugeTransformation::phase_derivative() const
{
    if (static_cast<int>(winding.size()) != chi.grid().dim()) {
        throw DomainError("GaugeTransformation: winding must have 2n entries");
    }
    DifferentialForm out = exterior_derivative(DifferentialForm::zero_form(chi));
    for (std::size_t i = 0; i < winding.size(); ++i) out.component(i) += static_cast<double>(winding[i]);
    return out;
}

GaugeTransformation operator+(const GaugeTransformation& lhs, const GaugeTransformation& rhs)
{
    GaugeTransformation out{lhs.chi + rhs.chi, lhs.winding};
    if (rhs.winding.size() != out.winding.size()) throw DomainError("gauge composition: winding size mismatch");
    for (std::size_t i = 0; i < out.winding.size(); ++i) out.winding[i] += rhs.winding[i];
    return out;
}

std::vector<double> FibreClass::reduced(double snap) const
{
    std::vector<double> out;
    for (double c : coefficients) {
        double r = c - std::floor(c);
        if (r > 1.0 - snap || r < snap) r = 0.0;
        out.push_back(r);
    }
    return out;
}

bool FibreClass::equivalent(const FibreClass& other, double tol) const
{
    if (other.coefficients.size() != coefficients.size()) return false;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        const double d = coefficients[i] - other.coefficients[i];
        if (std::abs(d - std::round(d)) > tol) return false;
    }
    return true;
}

ScalarField pair_connection(const RelativeConnection& connection, const InvariantField& eta)
{
    require_same_grid(connection.grid(), eta.g.grid(), "pair_connection");
    require_same_grid(connection.grid(), eta.v.grid(), "pair_connection");
    return eta.g + evaluate(connection.offset(), eta.v);
}

DifferentialForm infinitesimal_action(const RelativeConnection& connection, const InvariantField& eta)
{
    const DifferentialForm omega = require_symplectic(connection, "infinitesimal_action");
    DifferentialForm out = exterior_derivative(DifferentialForm::zero_form(pair_connection(connection, eta)));
    out += contract(eta.v, omega);
    return out;
}

namespace {

double moment_pairing_with(const RelativeConnection& connection, const DifferentialForm& omega,
                           const InvariantField& eta)
{
    const int n = connection.half_dim();
    const DifferentialForm top = pair_connection(connection, eta) * wedge_power(omega, n);
    return integrate(top) / factorial(n);
}

} // namespace

double moment_pairing(const RelativeConnection& connection, const InvariantField& eta)
{
    const DifferentialForm omega = require_symplectic(connection, "moment_pairing");
    return moment_pairing_with(connection, omega, eta);
}

MomentIdentityProbe moment_identity_residual(const RelativeConnection& connection, const DifferentialForm& b,
                                             const InvariantField& eta, double epsilon)
{
    if (!(epsilon > 0.0)) throw DomainError("moment_identity_residual: epsilon must be positive");
    const DifferentialForm omega = require_symplectic(connection, "moment_identity_residual");
    const double exact = omega_pairing(connection, b, infinitesimal_action(connection, eta));

    double margin = std::numeric_limits<double>::infinity();
    double scale = 0.0;
    auto difference_quotient = [&](double h) {
        double values[2];
        for (int s = 0; s < 2; ++s) {
            const RelativeConnection probe = connection.shifted(b, s == 0 ? h : -h);
            const DifferentialForm w = curvature(probe);
            const double m = symplectic_density(w).min();
            if (!(m > 0.0)) throw NotSymplecticError("moment_identity_residual: probe A ± εb leaves S", m);
            margin = std::min(margin, m);
            values[s] = moment_pairing_with(probe, w, eta);
            scale = std::max(scale, std::abs(values[s]));
        }
        return (values[0] - values[1]) / (2.0 * h);
    };

    const double r1 = std::abs(difference_quotient(epsilon) - exact);
    const double r2 = std::abs(difference_quotient(0.5 * epsilon) - exact);
    const double order = (r2 > 0.0 && r1 > 0.0) ? std::log2(r1 / r2) : std::numeric_limits<double>::quiet_NaN();
    const double floor = std::numeric_limits<double>::epsilon() * std::max(1.0, scale) / epsilon;
    return {r1, r2, order, margin, floor};
}

DifferentialForm volume_density(const RelativeConnection& connection)
{
    const int n = connection.half_dim();
    DifferentialForm out = wedge_power(curvature(connection), n);
    out *= 1.0 / factorial(n);
    return out;
}

RelativeConnection gauge_act(const GaugeTransformation& f, const RelativeConnection& connection)
{
    require_same_grid(f.chi.grid(), connection.grid(), "gauge_act");
    return connection.with_offset(connection.offset() + f.phase_derivative());
}

FibreClass fibre_class(const RelativeConnection& connection, const RelativeConnection& base)
{
    require_same_grid(connection.grid(), base.grid(), "fibre_class");
    const double mismatch = (curvature(connection) - curvature(base)).max_abs();
    if (mismatch >= 1e-10) {
        throw DomainError("fibre_class: curvatures differ (|Δω| = " + std::to_string(mismatch) + ")");
    }
    return {harmonic_part(connection.offset() - base.offset())};
}

double fibre_pairing(std::span<const double> alpha, std::span<const double> beta, const BundleSetup& bundle)
{
    const Grid& grid = bundle.grid();
    if (static_cast<int>(alpha.size()) != grid.dim() || static_cast<int>(beta.size()) != grid.dim()) {
        throw DomainError("fibre_pairing: classes must have 2n coefficients");
    }
    // Constant forms: evaluate on a coarse grid of the same dimension.
    const Grid coarse(grid.half_dim(), 8);
    std::vector<double> c1(bundle.chern_data().begin(), bundle.chern_data().end());
    const int n = grid.half_dim();
    DifferentialForm top = wedge(DifferentialForm::constant(coarse, 1, alpha), DifferentialForm::constant(coarse, 1, beta));
    if (n > 1) top = wedge(top, wedge_power(DifferentialForm::constant(coarse, 2, c1), n - 1));
    return top.component(0)[0] / factorial(n - 1);
}

double theta_pairing_from_primitives(const DifferentialForm& omega, const DifferentialForm& a,
                                     const DifferentialForm& a_prime)
{
    const int n = omega.grid().half_dim();
    DifferentialForm top = wedge(a, a_prime);
    if (n > 1) top = wedge(top, wedge_power(omega, n - 1));
    return integrate(top) / factorial(n - 1);
}

double theta_pairing(const DifferentialForm& omega, const DifferentialForm& gamma,
                     const DifferentialForm& gamma_prime)
{
    if (omega.grid().half_dim() != 2) throw DomainError("theta_pairing: requires n = 2");
    if (omega.degree() != 2 || gamma.degree() != 2 || gamma_prime.degree() != 2) {
        throw DomainError("theta_pairing: expected 2-forms");
    }
    constexpr double tangency_tol = 1e-8;
    const double t1 = wedge(gamma, omega).max_abs();
    const double t2 = wedge(gamma_prime, omega).max_abs();
    if (t1 >= tangency_tol || t2 >= tangency_tol) {
        throw DomainError("theta_pairing: inputs are not tangent to X_θ (|γ∧ω| = " + std::to_string(std::max(t1, t2))
                          + ")");
    }
    // hodge_primitive raises for non-exact inputs
    return theta_pairing_from_primitives(omega, hodge_primitive(gamma), hodge_primitive(gamma_prime));
}

InvariantField horizontal_preimage(const RelativeConnection& connection, const DifferentialForm& a)
{
    if (a.degree() != 1) throw DomainError("horizontal_preimage: expected a 1-form");
    const DifferentialForm omega = require_symplectic(connection, "horizontal_preimage");
    const Grid& grid = connection.grid();
    const int dim = grid.dim();
    VectorField v(grid);
    // (ι_v ω)_j = Σ_i v_i W_ij, i.e. Wᵀ v = a pointwise
    for (std::size_t p = 0; p < grid.point_count(); ++p) {
        Eigen::Matrix4d w = Eigen::Matrix4d::Identity();
        w.topLeftCorner(dim, dim).setZero();
        for (std::size_t c = 0; c < omega.component_count(); ++c) {
            const auto axes = mask_axes(omega.mask(c));
            w(axes[0], axes[1]) = omega.component(c)[p];
            w(axes[1], axes[0]) = -omega.component(c)[p];
        }
        Eigen::Vector4d rhs = Eigen::Vector4d::Zero();
        for (int i = 0; i < dim; ++i) rhs(i) = a.component(static_cast<std::size_t>(i))[p];
        Eigen::Vector4d sol;
        if (dim == 2) {
            const double det = w(0, 1) * w(0, 1);
            if (det == 0.0) throw NotSymplecticError("horizontal_preimage: singular pointwise system", 0.0);
            // Wᵀ = [[0, -w], [w, 0]]
            sol = Eigen::Vector4d::Zero();
            sol(0) = rhs(1) / w(0, 1);
            sol(1) = -rhs(0) / w(0, 1);
        } else {
            const Eigen::Matrix4d wt = w.transpose();
            const double det = wt.determinant();
            if (!(std::abs(det) > 0.0)) throw NotSymplecticError("horizontal_preimage: singular pointwise system", det);
            sol = wt.inverse() * rhs;
        }
        for (int i = 0; i < dim; ++i) v.component(i)[p] = sol(i);
    }
    ScalarField g = -evaluate(connection.offset(), v);
    return {std::move(v), std::move(g)};
}

SeparationWitness separation_witness(const RelativeConnection& connection, const RelativeConnection& other)
{
    require_same_grid(connection.grid(), other.grid(), "separation_witness");
    const DifferentialForm delta = connection.offset() - other.offset();
    if (delta.max_abs() <= 1e-8) throw DomainError("separation_witness: identical connections");
    VectorField v = metric_dual(delta);
    ScalarField g = -evaluate(other.offset(), v);
    InvariantField eta{std::move(v), std::move(g)};
    const double gap = moment_pairing(connection, eta);
    const double other_pairing = moment_pairing(other, eta);
    return {std::move(eta), gap, other_pairing};
}

nlohmann::json to_json(const ResidualRecord& r)
{
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(r.inputs_hash));
    auto finite_or_null = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); };
    return {{"name", r.name},
            {"inputs_hash", hash},
            {"residual", finite_or_null(r.residual)},
            {"order", finite_or_null(r.order)},
            {"margin", finite_or_null(r.margin)}};
}

namespace {
std::uint64_t fnv1a(std::uint64_t h, std::span<const double> values)
{
    for (double x : values) {
        unsigned char bytes[sizeof(double)];
        std::memcpy(bytes, &x, sizeof bytes);
        for (unsigned char b : bytes) {
            h ^= b;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}
} // namespace

std::uint64_t hash_fields(std::initializer_list<const ScalarField*> fields)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const ScalarField* f : fields) h = fnv1a(h, f->values());
    return h;
}

std::uint64_t hash_form(const DifferentialForm& form, std::uint64_t seed)
{
    std::uint64_t h = seed;
    for (std::size_t c = 0; c < form.component_count(); ++c) h = fnv1a(h, form.component(c).values());
    return h;
}

} // namespace momentlab
