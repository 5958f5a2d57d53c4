#include <momentlab/error.hpp>
#include <momentlab/field_io.hpp>

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>

namespace momentlab::io {

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

void to_little_endian(double x, char* out)
{
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof bits);
    if constexpr (std::endian::native == std::endian::big) {
        bits = __builtin_bswap64(bits);
    }
    std::memcpy(out, &bits, sizeof bits);
}

double from_little_endian(const char* in)
{
    std::uint64_t bits;
    std::memcpy(&bits, in, sizeof bits);
    if constexpr (std::endian::native == std::endian::big) {
        bits = __builtin_bswap64(bits);
    }
    double x;
    std::memcpy(&x, &bits, sizeof x);
    return x;
}

} // namespace

FieldFile field_paths(const std::filesystem::path& stem)
{
    auto bin = stem;
    bin += ".bin";
    auto json = stem;
    json += ".json";
    return {bin, json};
}

nlohmann::json sidecar_for(const DifferentialForm& form)
{
    nlohmann::json order = nlohmann::json::array();
    for (std::size_t c = 0; c < form.component_count(); ++c) {
        nlohmann::json axes = nlohmann::json::array();
        for (int a : mask_axes(form.mask(c))) axes.push_back(a + 1);
        order.push_back(axes);
    }
    return {{"half_dim", form.grid().half_dim()},
            {"resolution", form.grid().resolution()},
            {"degree", form.degree()},
            {"component_order", order}};
}

void write_field(const std::filesystem::path& stem, const DifferentialForm& form, const nlohmann::json& extra)
{
    const auto paths = field_paths(stem);
    {
        std::ofstream bin(paths.binary, std::ios::binary);
        if (!bin) throw IoError("cannot open " + paths.binary.string());
        std::vector<char> buffer(form.grid().point_count() * sizeof(double));
        for (std::size_t c = 0; c < form.component_count(); ++c) {
            const auto values = form.component(c).values();
            for (std::size_t p = 0; p < values.size(); ++p) to_little_endian(values[p], &buffer[p * sizeof(double)]);
            bin.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
        }
        if (!bin) throw IoError("write failed: " + paths.binary.string());
    }
    auto meta = sidecar_for(form);
    for (const auto& [key, value] : extra.items()) meta[key] = value;
    std::ofstream json(paths.sidecar);
    if (!json) throw IoError("cannot open " + paths.sidecar.string());
    json << meta.dump(2) << '\n';
}

LoadedField read_field(const std::filesystem::path& stem)
{
    const auto paths = field_paths(stem);
    std::ifstream json(paths.sidecar);
    if (!json) throw IoError("cannot open " + paths.sidecar.string());
    nlohmann::json meta;
    try {
        json >> meta;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed sidecar " + paths.sidecar.string() + ": " + e.what());
    }
    for (const char* key : {"half_dim", "resolution", "degree", "component_order"}) {
        if (!meta.contains(key)) throw IoError(std::string("sidecar missing key: ") + key);
    }
    const Grid grid(meta["half_dim"].get<int>(), meta["resolution"].get<int>());
    DifferentialForm form(grid, meta["degree"].get<int>());
    const auto expected = sidecar_for(form)["component_order"];
    if (meta["component_order"] != expected) {
        throw IoError("sidecar component_order does not match form_basis order");
    }

    std::ifstream bin(paths.binary, std::ios::binary);
    if (!bin) throw IoError("cannot open " + paths.binary.string());
    std::vector<char> buffer(grid.point_count() * sizeof(double));
    for (std::size_t c = 0; c < form.component_count(); ++c) {
        bin.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
        if (bin.gcount() != static_cast<std::streamsize>(buffer.size())) {
            throw IoError("truncated field file " + paths.binary.string());
        }
        auto values = form.component(c).values();
        for (std::size_t p = 0; p < values.size(); ++p) values[p] = from_little_endian(&buffer[p * sizeof(double)]);
    }
    if (bin.peek() != std::char_traits<char>::eof()) {
        throw IoError("trailing data in field file " + paths.binary.string());
    }
    return {std::move(form), std::move(meta)};
}

void write_csv(const std::filesystem::path& path, const DifferentialForm& form)
{
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string());
    const Grid& grid = form.grid();
    for (int a = 0; a < grid.dim(); ++a) out << (a ? "," : "") << 'x' << (a + 1);
    for (std::size_t c = 0; c < form.component_count(); ++c) out << ',' << component_name(form.mask(c));
    out << '\n' << std::setprecision(17);
    for (std::size_t p = 0; p < grid.point_count(); ++p) {
        const auto x = grid.coordinates(p);
        for (int a = 0; a < grid.dim(); ++a) out << (a ? "," : "") << x[static_cast<std::size_t>(a)];
        for (std::size_t c = 0; c < form.component_count(); ++c) out << ',' << form.component(c)[p];
        out << '\n';
    }
}

} // namespace momentlab::io
