#include <momentlab/error.hpp>
#include <momentlab/forms.hpp>
#include <momentlab/spectral.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <sstream>

namespace momentlab {

namespace {

constexpr int max_dim = Grid::max_dim;

struct BasisTables {
    // masks[dim][degree], lexicographic in the sorted axis tuple
    std::array<std::array<std::vector<AxisMask>, max_dim + 1>, max_dim + 1> masks;

    BasisTables()
    {
        for (int dim = 0; dim <= max_dim; ++dim) {
            std::vector<std::vector<int>> tuples;
            std::vector<int> current;
            // enumerate subsets in lexicographic order of their sorted tuples
            auto rec = [&](auto&& self, int start, int remaining) -> void {
                if (remaining == 0) {
                    tuples.push_back(current);
                    return;
                }
                for (int a = start; a < dim; ++a) {
                    current.push_back(a);
                    self(self, a + 1, remaining - 1);
                    current.pop_back();
                }
            };
            for (int k = 0; k <= dim; ++k) {
                tuples.clear();
                rec(rec, 0, k);
                for (const auto& t : tuples) {
                    AxisMask m = 0;
                    for (int a : t) m |= AxisMask{1} << a;
                    masks[static_cast<std::size_t>(dim)][static_cast<std::size_t>(k)].push_back(m);
                }
            }
        }
    }
};

const BasisTables& tables()
{
    static const BasisTables t;
    return t;
}

int popcount(AxisMask m) { return std::popcount(m); }

// (-1)^{#{(i, j) : i in lhs, j in rhs, i > j}} for disjoint masks.
double merge_sign(AxisMask lhs, AxisMask rhs)
{
    int inversions = 0;
    for (int j = 0; j < max_dim; ++j) {
        if (!(rhs & (AxisMask{1} << j))) continue;
        inversions += popcount(lhs & ~((AxisMask{2} << j) - 1));
    }
    return (inversions % 2 == 0) ? 1.0 : -1.0;
}

// Number of axes in `mask` below `axis`.
int rank_below(AxisMask mask, int axis) { return popcount(mask & ((AxisMask{1} << axis) - 1)); }

AxisMask mask_of(std::initializer_list<int> axes, int dim, bool require_sorted)
{
    AxisMask m = 0;
    int prev = -1;
    for (int a : axes) {
        if (a < 0 || a >= dim) throw DomainError("form: axis out of range");
        if (m & (AxisMask{1} << a)) throw DomainError("form: repeated axis");
        if (require_sorted && a <= prev) throw DomainError("form: multi-index must be increasing");
        prev = a;
        m |= AxisMask{1} << a;
    }
    return m;
}

} // namespace

std::span<const AxisMask> form_basis(int dim, int degree)
{
    if (dim < 0 || dim > max_dim || degree < 0 || degree > dim) {
        throw DomainError("form_basis: degree out of range");
    }
    return tables().masks[static_cast<std::size_t>(dim)][static_cast<std::size_t>(degree)];
}

std::size_t basis_position(int dim, AxisMask mask)
{
    const auto basis = form_basis(dim, popcount(mask));
    const auto it = std::find(basis.begin(), basis.end(), mask);
    if (it == basis.end()) throw DomainError("basis_position: mask outside dimension");
    return static_cast<std::size_t>(it - basis.begin());
}

std::vector<int> mask_axes(AxisMask mask)
{
    std::vector<int> axes;
    for (int a = 0; a < max_dim; ++a) {
        if (mask & (AxisMask{1} << a)) axes.push_back(a);
    }
    return axes;
}

std::string component_name(AxisMask mask)
{
    if (mask == 0) return "f";
    std::ostringstream os;
    bool first = true;
    for (int a : mask_axes(mask)) {
        if (!first) os << '^';
        os << "dx" << (a + 1);
        first = false;
    }
    return os.str();
}

std::size_t binomial(int n, int k) noexcept
{
    if (k < 0 || k > n) return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}

// ---------------------------------------------------------------------------

DifferentialForm::DifferentialForm(const Grid& grid, int degree) : grid_(grid), degree_(degree)
{
    if (degree < 0 || degree > grid.dim()) throw DomainError("DifferentialForm: degree out of range");
    components_.assign(binomial(grid.dim(), degree), ScalarField(grid));
}

DifferentialForm DifferentialForm::zero_form(ScalarField f)
{
    DifferentialForm out(f.grid(), 0);
    out.components_[0] = std::move(f);
    return out;
}

DifferentialForm DifferentialForm::constant(const Grid& grid, int degree,
                                            std::span<const double> coefficients)
{
    DifferentialForm out(grid, degree);
    if (coefficients.size() != out.component_count()) {
        throw DomainError("DifferentialForm::constant: wrong coefficient count");
    }
    for (std::size_t i = 0; i < coefficients.size(); ++i) out.components_[i] = ScalarField(grid, coefficients[i]);
    return out;
}

DifferentialForm DifferentialForm::monomial(ScalarField f, std::initializer_list<int> axes)
{
    const Grid grid = f.grid();
    const AxisMask m = mask_of(axes, grid.dim(), false);
    // sign of the permutation sorting `axes`
    int inversions = 0;
    for (auto i = axes.begin(); i != axes.end(); ++i) {
        for (auto j = std::next(i); j != axes.end(); ++j) {
            if (*i > *j) ++inversions;
        }
    }
    DifferentialForm out(grid, static_cast<int>(axes.size()));
    if (inversions % 2) f *= -1.0;
    out.components_[basis_position(grid.dim(), m)] = std::move(f);
    return out;
}

DifferentialForm DifferentialForm::one_form(std::vector<ScalarField> components)
{
    if (components.empty()) throw DomainError("one_form: no components");
    const Grid grid = components.front().grid();
    if (static_cast<int>(components.size()) != grid.dim()) throw DomainError("one_form: need dim components");
    DifferentialForm out(grid, 1);
    for (std::size_t i = 0; i < components.size(); ++i) {
        require_same_grid(grid, components[i].grid(), "one_form");
        out.components_[i] = std::move(components[i]);
    }
    return out;
}

AxisMask DifferentialForm::mask(std::size_t i) const { return form_basis(grid_.dim(), degree_)[i]; }

ScalarField& DifferentialForm::at(std::initializer_list<int> axes)
{
    if (static_cast<int>(axes.size()) != degree_) throw DomainError("DifferentialForm::at: wrong degree");
    return components_[basis_position(grid_.dim(), mask_of(axes, grid_.dim(), true))];
}

const ScalarField& DifferentialForm::at(std::initializer_list<int> axes) const
{
    return const_cast<DifferentialForm*>(this)->at(axes);
}

double DifferentialForm::max_abs() const noexcept
{
    double m = 0.0;
    for (const auto& c : components_) m = std::max(m, c.max_abs());
    return m;
}

void DifferentialForm::require_compatible(const DifferentialForm& other, const char* op) const
{
    require_same_grid(grid_, other.grid_, op);
    if (degree_ != other.degree_) throw DomainError(std::string(op) + ": degree mismatch");
}

DifferentialForm& DifferentialForm::operator+=(const DifferentialForm& other)
{
    require_compatible(other, "form addition");
    for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += other.components_[i];
    return *this;
}

DifferentialForm& DifferentialForm::operator-=(const DifferentialForm& other)
{
    require_compatible(other, "form subtraction");
    for (std::size_t i = 0; i < components_.size(); ++i) components_[i] -= other.components_[i];
    return *this;
}

DifferentialForm& DifferentialForm::operator*=(double c) noexcept
{
    for (auto& comp : components_) comp *= c;
    return *this;
}

DifferentialForm& DifferentialForm::operator*=(const ScalarField& f)
{
    for (auto& comp : components_) comp *= f;
    return *this;
}

DifferentialForm operator+(DifferentialForm a, const DifferentialForm& b) { return a += b; }
DifferentialForm operator-(DifferentialForm a, const DifferentialForm& b) { return a -= b; }
DifferentialForm operator*(double c, DifferentialForm a) { return a *= c; }
DifferentialForm operator*(const ScalarField& f, DifferentialForm a) { return a *= f; }

// ---------------------------------------------------------------------------

VectorField::VectorField(const Grid& grid)
    : grid_(grid), components_(static_cast<std::size_t>(grid.dim()), ScalarField(grid))
{}

VectorField::VectorField(std::vector<ScalarField> components)
    : grid_(components.empty() ? throw DomainError("VectorField: no components") : components.front().grid()),
      components_(std::move(components))
{
    if (static_cast<int>(components_.size()) != grid_.dim()) throw DomainError("VectorField: need dim components");
    for (const auto& c : components_) require_same_grid(grid_, c.grid(), "VectorField");
}

VectorField VectorField::constant(const Grid& grid, std::span<const double> components)
{
    if (static_cast<int>(components.size()) != grid.dim()) throw DomainError("VectorField::constant: need dim components");
    std::vector<ScalarField> c;
    for (double x : components) c.emplace_back(grid, x);
    return VectorField(std::move(c));
}

double VectorField::max_abs() const noexcept
{
    double m = 0.0;
    for (const auto& c : components_) m = std::max(m, c.max_abs());
    return m;
}

VectorField& VectorField::operator+=(const VectorField& other)
{
    require_same_grid(grid_, other.grid_, "VectorField addition");
    for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += other.components_[i];
    return *this;
}

VectorField& VectorField::operator*=(double c) noexcept
{
    for (auto& comp : components_) comp *= c;
    return *this;
}

// ---------------------------------------------------------------------------

DifferentialForm exterior_derivative(const DifferentialForm& form)
{
    const Grid& grid = form.grid();
    const int dim = grid.dim();
    if (form.degree() >= dim) throw DomainError("exterior_derivative: top-degree form");
    DifferentialForm out(grid, form.degree() + 1);
    for (std::size_t c = 0; c < form.component_count(); ++c) {
        const AxisMask m = form.mask(c);
        if (form.component(c).max_abs() == 0.0) continue;
        const auto grad = spectral::gradient(form.component(c));
        for (int axis = 0; axis < dim; ++axis) {
            if (m & (AxisMask{1} << axis)) continue;
            const double sign = (rank_below(m, axis) % 2 == 0) ? 1.0 : -1.0;
            out.component(basis_position(dim, m | (AxisMask{1} << axis)))
                .add_scaled(sign, grad[static_cast<std::size_t>(axis)]);
        }
    }
    return out;
}

DifferentialForm wedge(const DifferentialForm& lhs, const DifferentialForm& rhs)
{
    require_same_grid(lhs.grid(), rhs.grid(), "wedge");
    const int dim = lhs.grid().dim();
    const int degree = lhs.degree() + rhs.degree();
    if (degree > dim) throw DomainError("wedge: degree overflow");
    DifferentialForm out(lhs.grid(), degree);
    const std::size_t npts = lhs.grid().point_count();
    for (std::size_t i = 0; i < lhs.component_count(); ++i) {
        for (std::size_t j = 0; j < rhs.component_count(); ++j) {
            const AxisMask a = lhs.mask(i);
            const AxisMask b = rhs.mask(j);
            if (a & b) continue;
            const double sign = merge_sign(a, b);
            auto& target = out.component(basis_position(dim, a | b));
            const auto& f = lhs.component(i);
            const auto& g = rhs.component(j);
            for (std::size_t p = 0; p < npts; ++p) target[p] += sign * f[p] * g[p];
        }
    }
    return out;
}

DifferentialForm wedge_power(const DifferentialForm& beta, int k)
{
    if (k < 0) throw DomainError("wedge_power: negative exponent");
    DifferentialForm out = DifferentialForm::zero_form(ScalarField(beta.grid(), 1.0));
    for (int i = 0; i < k; ++i) out = wedge(out, beta);
    return out;
}

double integrate(const DifferentialForm& form)
{
    if (form.degree() != form.grid().dim()) throw DomainError("integrate: form is not of top degree");
    return form.component(0).mean();
}

DifferentialForm contract(const VectorField& v, const DifferentialForm& form)
{
    require_same_grid(v.grid(), form.grid(), "contract");
    if (form.degree() == 0) throw DomainError("contract: cannot contract a 0-form");
    const int dim = form.grid().dim();
    DifferentialForm out(form.grid(), form.degree() - 1);
    const std::size_t npts = form.grid().point_count();
    for (std::size_t c = 0; c < form.component_count(); ++c) {
        const AxisMask m = form.mask(c);
        const auto axes = mask_axes(m);
        for (std::size_t pos = 0; pos < axes.size(); ++pos) {
            const int axis = axes[pos];
            const double sign = (pos % 2 == 0) ? 1.0 : -1.0;
            auto& target = out.component(basis_position(dim, m & ~(AxisMask{1} << axis)));
            const auto& f = form.component(c);
            const auto& vi = v.component(axis);
            for (std::size_t p = 0; p < npts; ++p) target[p] += sign * vi[p] * f[p];
        }
    }
    return out;
}

ScalarField evaluate(const DifferentialForm& one_form, const VectorField& v)
{
    if (one_form.degree() != 1) throw DomainError("evaluate: expected a 1-form");
    require_same_grid(one_form.grid(), v.grid(), "evaluate");
    ScalarField out(one_form.grid());
    for (int i = 0; i < v.dim(); ++i) out += one_form.component(static_cast<std::size_t>(i)) * v.component(i);
    return out;
}

DifferentialForm codifferential(const DifferentialForm& form)
{
    if (form.degree() == 0) throw DomainError("codifferential: 0-form");
    const int dim = form.grid().dim();
    DifferentialForm out(form.grid(), form.degree() - 1);
    for (std::size_t c = 0; c < form.component_count(); ++c) {
        const AxisMask m = form.mask(c);
        if (form.component(c).max_abs() == 0.0) continue;
        const auto grad = spectral::gradient(form.component(c));
        const auto axes = mask_axes(m);
        for (std::size_t pos = 0; pos < axes.size(); ++pos) {
            const int axis = axes[pos];
            const double sign = (pos % 2 == 0) ? -1.0 : 1.0;
            out.component(basis_position(dim, m & ~(AxisMask{1} << axis)))
                .add_scaled(sign, grad[static_cast<std::size_t>(axis)]);
        }
    }
    return out;
}

DifferentialForm hodge_primitive(const DifferentialForm& g)
{
    if (g.degree() == 0) throw DomainError("hodge_primitive: 0-forms have no primitive");
    constexpr double harmonic_tol = 1e-10;
    std::ostringstream offending;
    bool harmonic = false;
    for (std::size_t c = 0; c < g.component_count(); ++c) {
        const double mean = g.component(c).mean();
        if (std::abs(mean) > harmonic_tol) {
            offending << ' ' << component_name(g.mask(c)) << '=' << mean;
            harmonic = true;
        }
    }
    if (harmonic) {
        throw DomainError("hodge_primitive: input is not exact; harmonic coefficients:" + offending.str());
    }
    if (g.degree() < g.grid().dim()) {
        const double closed_residual = exterior_derivative(g).max_abs();
        if (closed_residual > 1e-8 * std::max(1.0, g.max_abs())) {
            throw DomainError("hodge_primitive: input is not closed (|dG| = "
                              + std::to_string(closed_residual) + ")");
        }
    }
    // a = δ Δ⁻¹ G; dδΔ⁻¹G = G because dG = 0 and the harmonic part vanishes.
    DifferentialForm potential(g.grid(), g.degree());
    for (std::size_t c = 0; c < g.component_count(); ++c) {
        potential.component(c) = spectral::inverse_laplacian(g.component(c));
    }
    return codifferential(potential);
}

std::vector<double> harmonic_part(const DifferentialForm& one_form)
{
    if (one_form.degree() != 1) throw DomainError("harmonic_part: expected a 1-form");
    std::vector<double> out;
    for (std::size_t c = 0; c < one_form.component_count(); ++c) out.push_back(one_form.component(c).mean());
    return out;
}

VectorField metric_dual(const DifferentialForm& one_form)
{
    if (one_form.degree() != 1) throw DomainError("metric_dual: expected a 1-form");
    std::vector<ScalarField> c;
    for (std::size_t i = 0; i < one_form.component_count(); ++i) c.push_back(one_form.component(i));
    return VectorField(std::move(c));
}

DifferentialForm metric_flat(const VectorField& v)
{
    std::vector<ScalarField> c;
    for (int i = 0; i < v.dim(); ++i) c.push_back(v.component(i));
    return DifferentialForm::one_form(std::move(c));
}

ScalarField pointwise_norm_sq(const DifferentialForm& form)
{
    ScalarField out(form.grid());
    for (std::size_t c = 0; c < form.component_count(); ++c) out += form.component(c) * form.component(c);
    return out;
}

const ScalarField& top_coefficient(const DifferentialForm& top_form)
{
    if (top_form.degree() != top_form.grid().dim()) throw DomainError("top_coefficient: not a top-degree form");
    return top_form.component(0);
}

} // namespace momentlab
