#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace momentlab::testing {

namespace {

constexpr double pi = std::numbers::pi;

std::vector<std::vector<int>> increasing_tuples(int dim, int k)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < dim; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

std::size_t tuple_index(const std::vector<std::vector<int>>& tuples, const std::vector<int>& t)
{
    return static_cast<std::size_t>(std::find(tuples.begin(), tuples.end(), t) - tuples.begin());
}

} // namespace

int permutation_sign(std::vector<int> values)
{
    std::vector<int> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> perm;
    for (int v : values) perm.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()));
    std::vector<bool> seen(perm.size(), false);
    int cycles = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) seen[j] = true;
    }
    return ((static_cast<int>(perm.size()) - cycles) % 2 == 0) ? 1 : -1;
}

DifferentialForm naive_wedge(const DifferentialForm& f, const DifferentialForm& g)
{
    const Grid& grid = f.grid();
    const int dim = grid.dim();
    const int p = f.degree(), q = g.degree();
    const auto tf = increasing_tuples(dim, p), tg = increasing_tuples(dim, q), tk = increasing_tuples(dim, p + q);
    DifferentialForm out(grid, p + q);
    for (std::size_t k = 0; k < tk.size(); ++k) {
        for (std::size_t i = 0; i < tf.size(); ++i) {
            for (std::size_t j = 0; j < tg.size(); ++j) {
                std::vector<int> joined = tf[i];
                joined.insert(joined.end(), tg[j].begin(), tg[j].end());
                std::vector<int> sorted = joined;
                std::sort(sorted.begin(), sorted.end());
                if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted != tk[k]) continue;
                const double s = permutation_sign(joined);
                for (std::size_t pt = 0; pt < grid.point_count(); ++pt) {
                    out.component(k)[pt] += s * f.component(i)[pt] * g.component(j)[pt];
                }
            }
        }
    }
    return out;
}

DifferentialForm analytic_d(const TrigForm& form, const Grid& grid)
{
    const int dim = grid.dim();
    const auto src = increasing_tuples(dim, form.degree);
    const auto dst = increasing_tuples(dim, form.degree + 1);
    DifferentialForm out(grid, form.degree + 1);
    for (std::size_t i = 0; i < src.size(); ++i) {
        for (int j = 0; j < dim; ++j) {
            if (std::find(src[i].begin(), src[i].end(), j) != src[i].end()) continue;
            std::vector<int> joined{j};
            joined.insert(joined.end(), src[i].begin(), src[i].end());
            std::vector<int> sorted = joined;
            std::sort(sorted.begin(), sorted.end());
            const std::size_t k = tuple_index(dst, sorted);
            const double s = permutation_sign(joined);
            std::array<int, 4> orders{};
            orders[static_cast<std::size_t>(j)] = 1;
            out.component(k).add_scaled(s, form.components[i].sample_derivative(grid, orders));
        }
    }
    return out;
}

double pfaffian4(std::span<const double> c)
{
    // basis (12, 13, 14, 23, 24, 34)
    return c[0] * c[5] - c[1] * c[4] + c[2] * c[3];
}

double ma_density_analytic(const TrigPoly& phi, int half_dim, std::span<const double> x)
{
    using cplx = std::complex<double>;
    const cplx i(0.0, 1.0);
    auto h = [&](int j, int k) {
        const int xj = 2 * j, yj = 2 * j + 1, xk = 2 * k, yk = 2 * k + 1;
        return 0.25 * (phi.dd(x, xj, xk) + phi.dd(x, yj, yk) + i * (phi.dd(x, xj, yk) - phi.dd(x, yj, xk)));
    };
    if (half_dim == 1) return (1.0 - h(0, 0) / pi).real();
    const cplx m00 = 1.0 - h(0, 0) / pi, m01 = -h(0, 1) / pi, m10 = -h(1, 0) / pi, m11 = 1.0 - h(1, 1) / pi;
    return (m00 * m11 - m01 * m10).real();
}

DifferentialForm translation_action(const TrigForm& a, const TrigPoly& g, std::span<const double> v,
                                    const DifferentialForm& omega_ref, const Grid& grid, double t)
{
    const int dim = grid.dim();
    auto lie = [&](double s) {
        DifferentialForm out(grid, 1);
        for (std::size_t p = 0; p < grid.point_count(); ++p) {
            const auto x = grid.coordinates(p);
            std::array<double, 4> fwd{}, bwd{};
            for (int k = 0; k < dim; ++k) {
                fwd[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)] + s * v[static_cast<std::size_t>(k)];
                bwd[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)] - s * v[static_cast<std::size_t>(k)];
            }
            for (int c = 0; c < dim; ++c) {
                const auto& poly = a.components[static_cast<std::size_t>(c)];
                out.component(static_cast<std::size_t>(c))[p]
                    = (poly.value(std::span<const double>(fwd.data(), static_cast<std::size_t>(dim)))
                       - poly.value(std::span<const double>(bwd.data(), static_cast<std::size_t>(dim))))
                    / (2.0 * s);
            }
        }
        return out;
    };
    DifferentialForm result = lie(t / 2.0);
    result *= 4.0 / 3.0;
    result += (-1.0 / 3.0) * lie(t);
    for (int c = 0; c < dim; ++c) {
        std::array<int, 4> orders{};
        orders[static_cast<std::size_t>(c)] = 1;
        result.component(static_cast<std::size_t>(c)) += g.sample_derivative(grid, orders);
    }
    // ι_v ω_ref for constant coefficients: (ι_v ω)_j = Σ_i v_i W_ij
    const auto pairs = increasing_tuples(dim, 2);
    for (std::size_t b = 0; b < pairs.size(); ++b) {
        const double w = omega_ref.component(b)[0];
        const int i = pairs[b][0], j = pairs[b][1];
        result.component(static_cast<std::size_t>(j)) += v[static_cast<std::size_t>(i)] * w;
        result.component(static_cast<std::size_t>(i)) -= v[static_cast<std::size_t>(j)] * w;
    }
    return result;
}

double plaquette_curvature(const C2& z, const C2& u, const C2& w, double h)
{
    using cplx = std::complex<double>;
    auto loop = [&](double r) {
        // γ(s, t) = normalize(z + s u + t w); integrate A(∂γ) along the boundary
        auto point = [&](double s, double t) {
            return C2{z[0] + s * u[0] + t * w[0], z[1] + s * u[1] + t * w[1]};
        };
        auto a_along = [&](double s, double t, const C2& dir) {
            const C2 y = point(s, t);
            const double n2 = std::norm(y[0]) + std::norm(y[1]);
            const double n = std::sqrt(n2);
            const cplx dot = std::conj(y[0]) * dir[0] + std::conj(y[1]) * dir[1];
            // d/dε of y/|y| along dir, then A = Im⟨γ, γ'⟩/2π
            C2 tangent{(dir[0] - y[0] * dot.real() / n2) / n, (dir[1] - y[1] * dot.real() / n2) / n};
            const C2 g{y[0] / n, y[1] / n};
            const cplx inner = std::conj(g[0]) * tangent[0] + std::conj(g[1]) * tangent[1];
            return inner.imag() / (2.0 * pi);
        };
        // 8-point Gauss–Legendre per edge
        static const double nodes[] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                       -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                       0.7966664774136267,  0.9602898564975363};
        static const double weights[] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                         0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                         0.2223810344533745, 0.1012285362903763};
        const C2 mu{-u[0], -u[1]}, mw{-w[0], -w[1]};
        double total = 0.0;
        for (int q = 0; q < 8; ++q) {
            const double s = r * nodes[q];
            const double wq = r * weights[q];
            total += wq * a_along(s, -r, u);   // bottom, +s
            total += wq * a_along(r, s, w);    // right, +t
            total += wq * a_along(-s, r, mu);  // top, −s
            total += wq * a_along(-r, -s, mw); // left, −t
        }
        return total / (4.0 * r * r);
    };
    return (4.0 * loop(h / 2.0) - loop(h)) / 3.0;
}

std::complex<double> rk4_propagator(std::complex<double> x, int steps)
{
    const std::complex<double> r = 1.0 + x + x * x / 2.0 + x * x * x / 6.0 + x * x * x * x / 24.0;
    return std::pow(r, steps);
}

} // namespace momentlab::testing
