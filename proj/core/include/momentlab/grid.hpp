#pragma once

#include <array>
#include <cstddef>

namespace momentlab {

/// Uniform periodic grid on the flat torus T^{2n} = (R/Z)^{2n}, n in {1, 2}.
///
/// Points are stored row-major with the last axis fastest. Coordinates along
/// each axis are x = j / N for j = 0..N-1.
class Grid {
public:
    static constexpr int max_dim = 4;

    Grid(int half_dim, int resolution);

    int half_dim() const noexcept { return half_dim_; }
    int dim() const noexcept { return 2 * half_dim_; }
    int resolution() const noexcept { return resolution_; }
    std::size_t point_count() const noexcept { return point_count_; }
    double spacing() const noexcept { return 1.0 / resolution_; }

    /// Per-axis integer index of a flat point index.
    std::array<int, max_dim> indices(std::size_t point) const noexcept;
    /// Coordinate x_axis of a point, in [0, 1).
    double coordinate(std::size_t point, int axis) const noexcept;
    std::array<double, max_dim> coordinates(std::size_t point) const noexcept;

    bool operator==(const Grid&) const = default;

    /// Desk-scale defaults: N = 64 on T^2, N = 16 on T^4.
    static Grid default_for(int half_dim);

private:
    int half_dim_;
    int resolution_;
    std::size_t point_count_;
};

/// Throws DomainError if the two grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* context);

} // namespace momentlab
