#include <momentlab/error.hpp>
#include <momentlab/scalar_field.hpp>

#include <algorithm>
#include <cmath>

namespace momentlab {

ScalarField::ScalarField(const Grid& grid, double value)
    : grid_(grid), values_(grid.point_count(), value)
{}

ScalarField::ScalarField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values))
{
    if (values_.size() != grid_.point_count()) {
        throw DomainError("ScalarField: value count does not match grid");
    }
}

ScalarField ScalarField::sample(const Grid& grid,
                                const std::function<double(std::span<const double>)>& f)
{
    ScalarField out(grid);
    for (std::size_t p = 0; p < grid.point_count(); ++p) {
        const auto x = grid.coordinates(p);
        out[p] = f(std::span<const double>(x.data(), static_cast<std::size_t>(grid.dim())));
    }
    return out;
}

double pairwise_sum(std::span<const double> v) noexcept
{
    constexpr std::size_t block = 32;
    if (v.size() <= block) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double ScalarField::mean() const noexcept
{
    return pairwise_sum(values_) / static_cast<double>(values_.size());
}

double ScalarField::min() const noexcept { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const noexcept { return *std::max_element(values_.begin(), values_.end()); }

double ScalarField::max_abs() const noexcept
{
    double m = 0.0;
    for (double x : values_) m = std::max(m, std::abs(x));
    return m;
}

namespace {
void require_match(const ScalarField& a, const ScalarField& b)
{
    require_same_grid(a.grid(), b.grid(), "ScalarField arithmetic");
}
} // namespace

ScalarField& ScalarField::operator+=(const ScalarField& o)
{
    require_match(*this, o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o)
{
    require_match(*this, o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
}

ScalarField& ScalarField::operator*=(const ScalarField& o)
{
    require_match(*this, o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= o.values_[i];
    return *this;
}

ScalarField& ScalarField::operator/=(const ScalarField& o)
{
    require_match(*this, o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] /= o.values_[i];
    return *this;
}

ScalarField& ScalarField::operator+=(double c) noexcept
{
    for (double& x : values_) x += c;
    return *this;
}

ScalarField& ScalarField::operator-=(double c) noexcept
{
    for (double& x : values_) x -= c;
    return *this;
}

ScalarField& ScalarField::operator*=(double c) noexcept
{
    for (double& x : values_) x *= c;
    return *this;
}

ScalarField& ScalarField::add_scaled(double c, const ScalarField& o)
{
    require_match(*this, o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += c * o.values_[i];
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }
ScalarField operator/(ScalarField a, const ScalarField& b) { return a /= b; }
ScalarField operator*(double c, ScalarField a) { return a *= c; }
ScalarField operator*(ScalarField a, double c) { return a *= c; }
ScalarField operator+(ScalarField a, double c) { return a += c; }
ScalarField operator-(ScalarField a, double c) { return a -= c; }
ScalarField operator+(double c, ScalarField a) { return a += c; }
ScalarField operator-(double c, ScalarField a) { return (a *= -1.0) += c; }
ScalarField operator-(ScalarField a) { return a *= -1.0; }

} // namespace momentlab
