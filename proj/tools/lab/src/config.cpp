#include <momentlab/lab/config.hpp>

#include <cmath>
#include <fstream>
#include <set>

namespace momentlab::lab {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where)
{
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        if (!known.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

template <class T>
T get(const json& obj, const char* key, const std::string& where)
{
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
}

template <class T>
void read_opt(const json& obj, const char* key, T& target, const std::string& where)
{
    if (obj.contains(key)) target = get<T>(obj, key, where);
}

std::vector<VolumeSpec::CosineMode> parse_theta(const json& doc, int half_dim)
{
    // a string selects a named preset
    if (doc.is_string()) {
        if (doc.get<std::string>() == "flat") return {};
        if (doc.get<std::string>() == "cosine") return cosine_preset(half_dim);
        throw ConfigError("theta: unknown preset '" + doc.get<std::string>() + "'");
    }
    if (!doc.is_array()) throw ConfigError("theta: expected an array of cosine modes or \"flat\"");
    std::vector<VolumeSpec::CosineMode> modes;
    for (const auto& m : doc) {
        reject_unknown(m, {"wavevector", "amplitude", "phase"}, "theta[]");
        VolumeSpec::CosineMode mode{get<std::vector<int>>(m, "wavevector", "theta[]"),
                                    get<double>(m, "amplitude", "theta[]"), 0.0};
        read_opt(m, "phase", mode.phase, "theta[]");
        modes.push_back(std::move(mode));
    }
    return modes;
}

} // namespace

std::string to_string(Kind kind)
{
    switch (kind) {
    case Kind::verify: return "verify";
    case Kind::flow: return "flow";
    case Kind::weinstein: return "weinstein";
    case Kind::moment_check: return "moment-check";
    }
    return "?";
}

Kind parse_kind(const std::string& name)
{
    for (Kind k : {Kind::verify, Kind::flow, Kind::weinstein, Kind::moment_check}) {
        if (to_string(k) == name) return k;
    }
    throw ConfigError("unknown kind '" + name + "'");
}

double ExperimentConfig::tolerance() const
{
    if (tol) return *tol;
    switch (kind) {
    case Kind::weinstein: return 1e-6;
    default: return 1e-8;
    }
}

Grid ExperimentConfig::grid() const
{
    return Grid(half_dim, resolution > 0 ? resolution : Grid::default_for(half_dim).resolution());
}

ExperimentConfig parse_config(const json& doc)
{
    reject_unknown(doc, {"kind", "grid", "theta", "tol", "seed", "out", "level", "timing", "flow", "weinstein",
                         "moment_check"},
                   "config");
    ExperimentConfig c;
    if (doc.contains("kind")) c.kind = parse_kind(get<std::string>(doc, "kind", "config"));
    if (doc.contains("grid")) {
        const auto& g = doc.at("grid");
        reject_unknown(g, {"half_dim", "resolution"}, "grid");
        read_opt(g, "half_dim", c.half_dim, "grid");
        read_opt(g, "resolution", c.resolution, "grid");
    }
    c.flow.theta = cosine_preset(c.half_dim);
    if (doc.contains("theta")) {
        const auto& t = doc.at("theta");
        if (t.is_object()) {
            reject_unknown(t, {"file"}, "theta");
            c.flow.theta.clear();
            c.flow.theta_file = get<std::string>(t, "file", "theta");
        } else {
            c.flow.theta = parse_theta(t, c.half_dim);
        }
    }
    if (doc.contains("tol")) c.tol = get<double>(doc, "tol", "config");
    read_opt(doc, "seed", c.seed, "config");
    if (doc.contains("out")) c.out = get<std::string>(doc, "out", "config");
    if (doc.contains("level")) {
        const auto level = get<std::string>(doc, "level", "config");
        if (level == "quick") c.level = Level::quick;
        else if (level == "full") c.level = Level::full;
        else throw ConfigError("level: expected quick or full");
    }
    read_opt(doc, "timing", c.timing, "config");
    if (doc.contains("flow")) {
        const auto& f = doc.at("flow");
        reject_unknown(f, {"initial", "max_t", "dt"}, "flow");
        read_opt(f, "initial", c.flow.initial, "flow");
        read_opt(f, "max_t", c.flow.max_t, "flow");
        read_opt(f, "dt", c.flow.dt, "flow");
    }
    if (doc.contains("weinstein")) {
        const auto& w = doc.at("weinstein");
        reject_unknown(w, {"axis", "turns", "substeps", "samples", "hamiltonian_shift"}, "weinstein");
        read_opt(w, "axis", c.weinstein.axis, "weinstein");
        read_opt(w, "turns", c.weinstein.turns, "weinstein");
        read_opt(w, "substeps", c.weinstein.substeps, "weinstein");
        read_opt(w, "samples", c.weinstein.samples, "weinstein");
        read_opt(w, "hamiltonian_shift", c.weinstein.hamiltonian_shift, "weinstein");
    }
    if (doc.contains("moment_check")) {
        const auto& m = doc.at("moment_check");
        reject_unknown(m, {"probes", "epsilon", "connection"}, "moment_check");
        read_opt(m, "probes", c.moment_check.probes, "moment_check");
        read_opt(m, "epsilon", c.moment_check.epsilon, "moment_check");
        if (m.contains("connection")) c.moment_check.connection = get<std::string>(m, "connection", "moment_check");
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + ": " + e.what());
    }
    return parse_config(doc);
}

json to_json(const ExperimentConfig& c)
{
    json theta = json::array();
    for (const auto& m : c.flow.theta) {
        theta.push_back({{"wavevector", m.wavevector}, {"amplitude", m.amplitude}, {"phase", m.phase}});
    }
    json doc = {{"kind", to_string(c.kind)},
                {"grid", {{"half_dim", c.half_dim}, {"resolution", c.grid().resolution()}}},
                {"seed", c.seed},
                {"level", c.level == Level::quick ? "quick" : "full"},
                {"timing", c.timing}};
    if (c.kind != Kind::verify) doc["tol"] = c.tolerance();
    switch (c.kind) {
    case Kind::flow:
        if (c.flow.theta_file) doc["theta"] = {{"file", c.flow.theta_file->string()}};
        else doc["theta"] = theta;
        doc["flow"] = {{"initial", c.flow.initial}, {"max_t", c.flow.max_t}, {"dt", c.flow.dt}};
        break;
    case Kind::weinstein:
        doc["weinstein"] = {{"axis", c.weinstein.axis},
                            {"turns", c.weinstein.turns},
                            {"substeps", c.weinstein.substeps},
                            {"samples", c.weinstein.samples},
                            {"hamiltonian_shift", c.weinstein.hamiltonian_shift}};
        break;
    case Kind::moment_check:
        doc["moment_check"] = {{"probes", c.moment_check.probes}, {"epsilon", c.moment_check.epsilon}};
        if (c.moment_check.connection) doc["moment_check"]["connection"] = c.moment_check.connection->string();
        break;
    case Kind::verify: break;
    }
    return doc;
}

void validate(const ExperimentConfig& c)
{
    if (c.half_dim != 1 && c.half_dim != 2) throw ConfigError("grid.half_dim must be 1 or 2");
    if (c.resolution != 0 && (c.resolution < 8 || c.resolution % 2 != 0)) {
        throw ConfigError("grid.resolution must be even and at least 8");
    }
    if (c.tol && !(*c.tol > 0.0 && std::isfinite(*c.tol))) throw ConfigError("tol must be positive");
    if (c.tol && c.kind == Kind::verify) throw ConfigError("tol does not apply to verify (tolerances are pinned)");
    if (c.out.empty()) throw ConfigError("out must name a directory");
    if (c.kind == Kind::flow) {
        for (const auto& m : c.flow.theta) {
            if (static_cast<int>(m.wavevector.size()) != 2 * c.half_dim) {
                throw ConfigError("theta: wavevector needs " + std::to_string(2 * c.half_dim) + " entries");
            }
        }
        if (c.flow.initial != "zero" && c.flow.initial != "perturbed") {
            throw ConfigError("flow.initial must be zero or perturbed");
        }
        if (!(c.flow.max_t > 0.0)) throw ConfigError("flow.max_t must be positive");
        if (c.flow.dt < 0.0) throw ConfigError("flow.dt must be non-negative");
    }
    if (c.kind == Kind::weinstein) {
        const auto& w = c.weinstein;
        if (std::hypot(w.axis[0], w.axis[1], w.axis[2]) == 0.0) throw ConfigError("weinstein.axis must be nonzero");
        if (w.samples < 2) throw ConfigError("weinstein.samples must be at least 2");
        if (w.substeps < 0) throw ConfigError("weinstein.substeps must be non-negative");
        if (w.substeps > 0 && w.substeps < 1000 * std::abs(w.turns)) {
            throw ConfigError("weinstein.substeps must be at least 1000 per turn");
        }
    }
    if (c.kind == Kind::moment_check) {
        if (c.moment_check.probes < 1) throw ConfigError("moment_check.probes must be positive");
        if (!(c.moment_check.epsilon > 0.0)) throw ConfigError("moment_check.epsilon must be positive");
    }
}

std::vector<VolumeSpec::CosineMode> cosine_preset(int half_dim)
{
    std::vector<int> k(static_cast<std::size_t>(2 * std::max(1, std::min(half_dim, 2))), 0);
    k[0] = 1;
    return {{k, 0.3, 0.0}};
}

} // namespace momentlab::lab
