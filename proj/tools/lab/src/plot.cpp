#include <momentlab/lab/config.hpp>
#include <momentlab/lab/plot.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace momentlab::lab {

namespace {

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v)
{
    std::ostringstream s;
    s << std::setprecision(4) << v;
    return s.str();
}

} // namespace

std::size_t CsvTable::column(const std::string& name) const
{
    const auto it = std::find(header.begin(), header.end(), name);
    if (it != header.end()) return static_cast<std::size_t>(it - header.begin());
    std::string available;
    for (const auto& h : header) available += (available.empty() ? "" : ", ") + h;
    throw ConfigError("column '" + name + "' not found; available columns: " + available);
}

CsvTable read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path.string());
    CsvTable table;
    std::string line;
    if (!std::getline(in, line) || line.empty()) throw ConfigError(path.string() + ": empty CSV");
    table.header = split(line);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != table.header.size()) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected "
                              + std::to_string(table.header.size()) + " cells");
        }
        std::vector<double> row;
        for (const auto& c : cells) {
            char* end = nullptr;
            const double v = std::strtod(c.c_str(), &end);
            if (end == c.c_str()) throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": not a number");
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    if (table.rows.empty()) throw ConfigError(path.string() + ": CSV has no data rows");
    return table;
}

std::string render_svg(const CsvTable& table, const PlotSpec& spec)
{
    if (spec.y.empty()) throw ConfigError("plot: no y columns given");
    const std::size_t xc = table.column(spec.x);
    std::vector<std::size_t> ycols;
    for (const auto& y : spec.y) ycols.push_back(table.column(y));

    auto ty = [&](double v) { return spec.log_y ? std::log10(v) : v; };
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& row : table.rows) {
        x0 = std::min(x0, row[xc]);
        x1 = std::max(x1, row[xc]);
        for (auto c : ycols) {
            if (spec.log_y && !(row[c] > 0.0)) continue;
            if (!std::isfinite(row[c])) continue;
            y0 = std::min(y0, ty(row[c]));
            y1 = std::max(y1, ty(row[c]));
        }
    }
    if (!std::isfinite(y0)) throw ConfigError("plot: no plottable values (log scale needs positive data)");
    if (x1 == x0) x1 = x0 + 1.0;
    if (y1 == y0) y1 = y0 + 1.0;

    constexpr double width = 640, height = 400, left = 70, right = 20, top = 30, bottom = 50;
    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (width - left - right); };
    auto py = [&](double y) { return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom); };

    std::ostringstream svg;
    svg << std::fixed << std::setprecision(2);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!spec.title.empty()) {
        svg << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            << "font-size=\"14\">" << spec.title << "</text>\n";
    }
    svg << "<g stroke=\"black\" stroke-width=\"1\">"
        << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
        << height - bottom << "\"/>"
        << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
        << "\"/></g>\n";
    svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = x0 + (x1 - x0) * i / 4.0;
        const double fy = y0 + (y1 - y0) * i / 4.0;
        svg << "<text x=\"" << px(fx) << "\" y=\"" << height - bottom + 16 << "\" text-anchor=\"middle\">" << fmt(fx)
            << "</text>\n";
        svg << "<text x=\"" << left - 6 << "\" y=\"" << py(fy) + 4 << "\" text-anchor=\"end\">"
            << (spec.log_y ? "1e" + fmt(fy) : fmt(fy)) << "</text>\n";
    }
    svg << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\">"
        << spec.x << "</text>\n</g>\n";
    for (std::size_t k = 0; k < ycols.size(); ++k) {
        const char* colour = palette[k % std::size(palette)];
        svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& row : table.rows) {
            const double v = row[ycols[k]];
            if (!std::isfinite(v) || (spec.log_y && !(v > 0.0))) continue;
            svg << px(row[xc]) << ',' << py(ty(v)) << ' ';
        }
        svg << "\"/>\n";
        svg << "<text x=\"" << width - right - 4 << "\" y=\"" << top + 14 * (k + 1) << "\" text-anchor=\"end\" "
            << "font-family=\"sans-serif\" font-size=\"11\" fill=\"" << colour << "\">" << spec.y[k] << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_plot(const std::filesystem::path& csv, const PlotSpec& spec, const std::filesystem::path& svg)
{
    const std::string doc = render_svg(read_csv(csv), spec);
    std::ofstream out(svg);
    if (!out) throw IoError("cannot write " + svg.string());
    out << doc;
}

} // namespace momentlab::lab
