#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace momentlab::lab {

struct PlotSpec {
    std::string x = "t";
    std::vector<std::string> y;
    bool log_y = false;
    std::string title;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Index of a column; throws ConfigError listing the available names.
    std::size_t column(const std::string& name) const;
};

/// Parses a numeric CSV with a header row; throws ConfigError when empty.
CsvTable read_csv(const std::filesystem::path& path);

/// Line chart of spec.y against spec.x as a standalone SVG document.
std::string render_svg(const CsvTable& table, const PlotSpec& spec);
void emit_plot(const std::filesystem::path& csv, const PlotSpec& spec, const std::filesystem::path& svg);

} // namespace momentlab::lab
