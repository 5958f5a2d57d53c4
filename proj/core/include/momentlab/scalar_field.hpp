#pragma once

#include <momentlab/grid.hpp>

#include <functional>
#include <span>
#include <vector>

namespace momentlab {

/// Real-valued function sampled on a Grid.
class ScalarField {
public:
    explicit ScalarField(const Grid& grid, double value = 0.0);
    ScalarField(const Grid& grid, std::vector<double> values);

    /// Samples f(x) at every grid point; x has grid.dim() entries.
    static ScalarField sample(const Grid& grid,
                              const std::function<double(std::span<const double>)>& f);

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }

    double& operator[](std::size_t i) noexcept { return values_[i]; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    /// Mean over the grid, i.e. the integral over the unit-volume torus.
    /// Uses pairwise summation.
    double mean() const noexcept;
    double min() const noexcept;
    double max() const noexcept;
    double max_abs() const noexcept;

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(const ScalarField& other);
    ScalarField& operator/=(const ScalarField& other);
    ScalarField& operator+=(double c) noexcept;
    ScalarField& operator-=(double c) noexcept;
    ScalarField& operator*=(double c) noexcept;

    /// this += c * other
    ScalarField& add_scaled(double c, const ScalarField& other);

private:
    Grid grid_;
    std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(ScalarField a, const ScalarField& b);
ScalarField operator/(ScalarField a, const ScalarField& b);
ScalarField operator*(double c, ScalarField a);
ScalarField operator*(ScalarField a, double c);
ScalarField operator+(ScalarField a, double c);
ScalarField operator-(ScalarField a, double c);
ScalarField operator+(double c, ScalarField a);
ScalarField operator-(double c, ScalarField a);
ScalarField operator-(ScalarField a);

/// Pairwise (cascade) sum of a sequence.
double pairwise_sum(std::span<const double> values) noexcept;

} // namespace momentlab
