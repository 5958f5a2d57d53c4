#include <momentlab/error.hpp>
#include <momentlab/grid.hpp>

#include <string>

namespace momentlab {

Grid::Grid(int half_dim, int resolution)
    : half_dim_(half_dim), resolution_(resolution), point_count_(1)
{
    if (half_dim != 1 && half_dim != 2) {
        throw DomainError("Grid: half_dim must be 1 or 2, got " + std::to_string(half_dim));
    }
    if (resolution < 8 || resolution % 2 != 0) {
        throw DomainError("Grid: resolution must be even and >= 8, got "
                          + std::to_string(resolution));
    }
    for (int i = 0; i < dim(); ++i) point_count_ *= static_cast<std::size_t>(resolution);
}

std::array<int, Grid::max_dim> Grid::indices(std::size_t point) const noexcept
{
    std::array<int, max_dim> idx{};
    const auto n = static_cast<std::size_t>(resolution_);
    for (int axis = dim() - 1; axis >= 0; --axis) {
        idx[static_cast<std::size_t>(axis)] = static_cast<int>(point % n);
        point /= n;
    }
    return idx;
}

double Grid::coordinate(std::size_t point, int axis) const noexcept
{
    return indices(point)[static_cast<std::size_t>(axis)] * spacing();
}

std::array<double, Grid::max_dim> Grid::coordinates(std::size_t point) const noexcept
{
    const auto idx = indices(point);
    std::array<double, max_dim> x{};
    for (int i = 0; i < dim(); ++i) x[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i)] * spacing();
    return x;
}

Grid Grid::default_for(int half_dim)
{
    return Grid(half_dim, half_dim == 1 ? 64 : 16);
}

void require_same_grid(const Grid& a, const Grid& b, const char* context)
{
    if (!(a == b)) {
        throw DomainError(std::string(context) + ": grid mismatch");
    }
}

} // namespace momentlab
