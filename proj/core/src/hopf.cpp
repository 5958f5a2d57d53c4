#include <momentlab/error.hpp>
#include <momentlab/hopf.hpp>

#include <cmath>
#include <numbers>

namespace momentlab::weinstein {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double dot(const R3& a, const R3& b) noexcept { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

R3 cross(const R3& a, const R3& b) noexcept
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

} // namespace

PrequantumPoint PrequantumPoint::normalized(const C2& z)
{
    const double n = std::sqrt(std::norm(z[0]) + std::norm(z[1]));
    if (!(n > 0.0)) throw DomainError("PrequantumPoint: zero vector");
    return {{z[0] / n, z[1] / n}};
}

double PrequantumPoint::norm_sq() const noexcept { return std::norm(z[0]) + std::norm(z[1]); }

std::complex<double> hermitian(const C2& a, const C2& b) noexcept
{
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

R3 hopf_projection(const PrequantumPoint& p) noexcept
{
    const auto q = std::conj(p.z[0]) * p.z[1];
    return {2.0 * q.real(), 2.0 * q.imag(), std::norm(p.z[0]) - std::norm(p.z[1])};
}

R3 hopf_pushforward(const PrequantumPoint& p, const C2& w) noexcept
{
    const auto& z = p.z;
    const auto q = std::conj(w[0]) * z[1] + std::conj(z[0]) * w[1];
    const double r = 2.0 * ((std::conj(z[0]) * w[0]).real() - (std::conj(z[1]) * w[1]).real());
    return {2.0 * q.real(), 2.0 * q.imag(), r};
}

double hopf_connection(const PrequantumPoint& p, const C2& w)
{
    const auto inner = hermitian(p.z, w);
    const double scale = std::max(1.0, std::sqrt(std::norm(w[0]) + std::norm(w[1])));
    if (std::abs(inner.real()) > 1e-10 * scale) {
        throw DomainError("hopf_connection: vector is not tangent to S^3 (Re<z,w> = "
                          + std::to_string(inner.real()) + ")");
    }
    return inner.imag() / two_pi;
}

C2 vertical_generator(const PrequantumPoint& p) noexcept
{
    const std::complex<double> k(0.0, two_pi);
    return {k * p.z[0], k * p.z[1]};
}

C2 horizontal_lift(const PrequantumPoint& p, const R3& v)
{
    const R3 x = hopf_projection(p);
    if (std::abs(dot(x, v)) > 1e-10 * std::max(1.0, std::sqrt(dot(v, v)))) {
        throw DomainError("horizontal_lift: vector is not tangent to S^2");
    }
    const C2 perp{-std::conj(p.z[1]), std::conj(p.z[0])};
    const std::complex<double> i(0.0, 1.0);
    const C2 iperp{i * perp[0], i * perp[1]};
    // dp maps z⊥ and iz⊥ to an orthogonal pair spanning T_x S²
    const R3 e1 = hopf_pushforward(p, perp);
    const R3 e2 = hopf_pushforward(p, iperp);
    const std::complex<double> c(dot(v, e1) / dot(e1, e1), dot(v, e2) / dot(e2, e2));
    return {c * perp[0], c * perp[1]};
}

double area_form(const R3& x, const R3& u, const R3& w) noexcept
{
    return dot(x, cross(u, w)) / (4.0 * std::numbers::pi);
}

double Hamiltonian::value(const R3& x) const noexcept { return speed * (0.5 * dot(axis, x) + offset); }

R3 Hamiltonian::field(const R3& x) const noexcept
{
    R3 v = cross(axis, x);
    for (double& c : v) c *= two_pi * speed;
    return v;
}

double Hamiltonian::differential(const R3& x, const R3& u) const noexcept
{
    // gradient of axis·x/2 projected to T_x S²
    return speed * 0.5 * (dot(axis, u) - dot(axis, x) * dot(x, u));
}

Hamiltonian rotation_hamiltonian(const R3& axis, double speed, double offset)
{
    const double n = std::sqrt(dot(axis, axis));
    if (!(n > 0.0)) throw DomainError("rotation_hamiltonian: zero axis");
    return {{axis[0] / n, axis[1] / n, axis[2] / n}, speed, offset};
}

C2 lift_generator(const Hamiltonian& h, const PrequantumPoint& p)
{
    const R3 x = hopf_projection(p);
    const C2 horizontal = horizontal_lift(p, h.field(x));
    const C2 vertical = vertical_generator(p);
    const double hx = h.value(x);
    return {horizontal[0] - hx * vertical[0], horizontal[1] - hx * vertical[1]};
}

} // namespace momentlab::weinstein
