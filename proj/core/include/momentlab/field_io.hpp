#pragma once

#include <momentlab/forms.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>

namespace momentlab::io {

/// Field files: `<stem>.bin` holds little-endian float64 samples, component
/// by component in form_basis order, each row-major with the last axis
/// fastest. `<stem>.json` holds {half_dim, resolution, degree,
/// component_order} plus any caller-supplied extra keys.
struct FieldFile {
    std::filesystem::path binary;
    std::filesystem::path sidecar;
};

FieldFile field_paths(const std::filesystem::path& stem);

void write_field(const std::filesystem::path& stem, const DifferentialForm& form,
                 const nlohmann::json& extra = nlohmann::json::object());

struct LoadedField {
    DifferentialForm form;
    nlohmann::json sidecar;
};

LoadedField read_field(const std::filesystem::path& stem);

/// One row per grid point: x1..x_{2n}, then the components in form_basis order.
void write_csv(const std::filesystem::path& path, const DifferentialForm& form);

nlohmann::json sidecar_for(const DifferentialForm& form);

} // namespace momentlab::io
