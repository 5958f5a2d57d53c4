#include <momentlab/error.hpp>
#include <momentlab/kahler.hpp>
#include <momentlab/spectral.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace momentlab {

namespace {

using cplx = std::complex<double>;

// Linear map from the real Hessian entries H(c, d), c ≤ d, to the real
// coefficients of (i/2π) Σ_{j,k} φ_{z_j z̄_k} dz̄_k ∧ dz_j.
struct DdbarStencil {
    std::vector<std::array<int, 2>> pairs;            // Hessian entries used
    std::vector<std::vector<double>> weights;         // [basis index][pair index]
};

DdbarStencil build_stencil(int half_dim)
{
    const int dim = 2 * half_dim;
    const auto basis = form_basis(dim, 2);
    std::vector<std::array<int, 2>> all_pairs;
    for (int c = 0; c < dim; ++c) {
        for (int d = c; d < dim; ++d) all_pairs.push_back({c, d});
    }
    auto pair_index = [&](int c, int d) {
        if (c > d) std::swap(c, d);
        for (std::size_t i = 0; i < all_pairs.size(); ++i) {
            if (all_pairs[i][0] == c && all_pairs[i][1] == d) return i;
        }
        return all_pairs.size();
    };

    std::vector<std::vector<cplx>> m(basis.size(), std::vector<cplx>(all_pairs.size()));
    const cplx i_unit(0.0, 1.0);
    const cplx prefactor = i_unit / (2.0 * std::numbers::pi);
    for (int j = 0; j < half_dim; ++j) {
        for (int k = 0; k < half_dim; ++k) {
            // dz_j and dz̄_k in the real basis
            std::vector<cplx> dz(static_cast<std::size_t>(dim)), dzbar(static_cast<std::size_t>(dim));
            dz[static_cast<std::size_t>(2 * j)] = 1.0;
            dz[static_cast<std::size_t>(2 * j + 1)] = i_unit;
            dzbar[static_cast<std::size_t>(2 * k)] = 1.0;
            dzbar[static_cast<std::size_t>(2 * k + 1)] = -i_unit;
            // φ_{z_j z̄_k} = ¼ (∂x_j − i∂y_j)(∂x_k + i∂y_k) φ
            const std::array<std::pair<std::array<int, 2>, cplx>, 4> hessian_terms{{
                {{2 * j, 2 * k}, 0.25},
                {{2 * j, 2 * k + 1}, 0.25 * i_unit},
                {{2 * j + 1, 2 * k}, -0.25 * i_unit},
                {{2 * j + 1, 2 * k + 1}, 0.25},
            }};
            for (std::size_t b = 0; b < basis.size(); ++b) {
                const auto axes = mask_axes(basis[b]);
                const auto p = static_cast<std::size_t>(axes[0]);
                const auto q = static_cast<std::size_t>(axes[1]);
                const cplx wedge_coeff = dzbar[p] * dz[q] - dzbar[q] * dz[p];
                if (wedge_coeff == cplx(0.0)) continue;
                for (const auto& [cd, w] : hessian_terms) {
                    m[b][pair_index(cd[0], cd[1])] += prefactor * w * wedge_coeff;
                }
            }
        }
    }

    DdbarStencil stencil;
    std::vector<std::size_t> used;
    for (std::size_t pi = 0; pi < all_pairs.size(); ++pi) {
        bool nonzero = false;
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (std::abs(m[b][pi].imag()) > 1e-14) throw Error("ddbar stencil: non-real coefficient");
            nonzero = nonzero || std::abs(m[b][pi].real()) > 1e-14;
        }
        if (nonzero) used.push_back(pi);
    }
    for (std::size_t pi : used) stencil.pairs.push_back(all_pairs[pi]);
    stencil.weights.assign(basis.size(), std::vector<double>(used.size()));
    for (std::size_t b = 0; b < basis.size(); ++b) {
        for (std::size_t u = 0; u < used.size(); ++u) stencil.weights[b][u] = m[b][used[u]].real();
    }
    return stencil;
}

const DdbarStencil& stencil_for(int half_dim)
{
    static const std::array<DdbarStencil, 2> stencils{build_stencil(1), build_stencil(2)};
    return stencils.at(static_cast<std::size_t>(half_dim - 1));
}

} // namespace

DifferentialForm ddbar_form(const ScalarField& phi)
{
    const Grid& grid = phi.grid();
    const auto& stencil = stencil_for(grid.half_dim());
    auto coefficients = spectral::second_derivative_combinations(phi, stencil.pairs, stencil.weights);
    DifferentialForm out(grid, 2);
    for (std::size_t b = 0; b < out.component_count(); ++b) out.component(b) = std::move(coefficients[b]);
    return out;
}

DifferentialForm kahler_form(const ScalarField& phi, const DifferentialForm& omega)
{
    if (omega.degree() != 2) throw DomainError("kahler_form: expected a 2-form");
    require_same_grid(phi.grid(), omega.grid(), "kahler_form");
    return omega + ddbar_form(phi);
}

RelativeConnection complex_gauge_act(const ScalarField& phi, const RelativeConnection& connection)
{
    require_same_grid(phi.grid(), connection.grid(), "complex_gauge_act");
    DifferentialForm correction = apply_standard_j(exterior_derivative(DifferentialForm::zero_form(phi)));
    correction *= -1.0 / (4.0 * std::numbers::pi);
    return connection.with_offset(connection.offset() + correction);
}

RelativeConnection complex_gauge_act(const ComplexGaugeTransformation& f, const RelativeConnection& connection)
{
    return complex_gauge_act(f.log_modulus, gauge_act(f.phase, connection));
}

} // namespace momentlab
