#include <momentlab/lab/experiments.hpp>
#include <momentlab/lab/plot.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>

using namespace momentlab;
using namespace momentlab::lab;

namespace {

struct GlobalFlags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<double> tol;
};

struct GridFlags {
    std::optional<int> half_dim;
    std::optional<int> resolution;
};

void add_grid_flags(CLI::App* cmd, GridFlags& g)
{
    cmd->add_option("--half-dim", g.half_dim, "n for the torus T^{2n} (1 or 2)");
    cmd->add_option("--resolution", g.resolution, "grid points per axis");
}

ExperimentConfig base_config(const GlobalFlags& flags, Kind kind)
{
    ExperimentConfig config;
    if (!flags.config.empty()) {
        config = load_config(flags.config);
        if (config.kind != kind) {
            throw ConfigError("config kind '" + to_string(config.kind) + "' does not match subcommand '" + to_string(kind) + "'");
        }
    } else {
        config = parse_config(nlohmann::json::object());
        config.kind = kind;
    }
    if (flags.seed) config.seed = *flags.seed;
    if (flags.out) config.out = *flags.out;
    if (flags.tol) config.tol = *flags.tol;
    return config;
}

void apply_grid(ExperimentConfig& config, const GridFlags& g)
{
    if (g.half_dim && *g.half_dim != config.half_dim) {
        config.half_dim = *g.half_dim;
        config.flow.theta = cosine_preset(config.half_dim);
    }
    if (g.resolution) config.resolution = *g.resolution;
}

int run(const ExperimentConfig& config)
{
    const RunReport report = run_experiment(config);
    std::cout << format_text(report);
    return report.pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerical lab for symplectic connections, moment maps and the Weinstein homomorphism"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalFlags flags;
    app.add_option("--config", flags.config, "JSON experiment configuration")->check(CLI::ExistingFile);
    app.add_option("--seed", flags.seed, "64-bit seed for every random draw");
    app.add_option("--out", flags.out, "output directory");
    app.add_option("--tol", flags.tol, "convergence or acceptance tolerance");

    auto* verify = app.add_subcommand("verify", "run the invariant suite");
    std::optional<std::string> level;
    bool verify_timing = false;
    verify->add_option("--level", level, "quick (T^2) or full (adds T^4)")->check(CLI::IsMember({"quick", "full"}));
    verify->add_flag("--timing", verify_timing, "record wall-clock times (breaks byte reproducibility)");

    auto* flow = app.add_subcommand("flow", "run the prescribed-volume gradient flow");
    GridFlags flow_grid;
    add_grid_flags(flow, flow_grid);
    std::optional<std::string> initial;
    std::optional<double> max_t, dt;
    bool flow_timing = false;
    flow->add_option("--initial", initial, "zero or perturbed")->check(CLI::IsMember({"zero", "perturbed"}));
    flow->add_option("--max-t", max_t, "give up after this flow time");
    flow->add_option("--dt", dt, "time step (default: stability bound)");
    flow->add_flag("--timing", flow_timing, "record wall-clock times in the trace");

    auto* wein = app.add_subcommand("weinstein", "holonomy of a rotation loop on the Hopf bundle");
    std::optional<int> turns, substeps, samples;
    std::optional<std::vector<double>> axis;
    std::optional<double> shift;
    wein->add_option("--turns", turns, "number of full rotations");
    wein->add_option("--axis", axis, "rotation axis, three components")->expected(3);
    wein->add_option("--substeps", substeps, "initial RK4 steps per loop");
    wein->add_option("--samples", samples, "random start points");
    wein->add_option("--shift", shift, "constant added to the mean-zero Hamiltonian");

    auto* moment = app.add_subcommand("moment-check", "moment-map identity probes");
    GridFlags moment_grid;
    add_grid_flags(moment, moment_grid);
    std::optional<std::string> connection;
    std::optional<int> probes;
    std::optional<double> epsilon;
    moment->add_option("--connection", connection, "connection field-file stem (random if omitted)");
    moment->add_option("--probes", probes, "number of random probes");
    moment->add_option("--epsilon", epsilon, "finite-difference step");

    auto* plot = app.add_subcommand("plot", "render trace CSV columns as SVG");
    std::string csv, svg, x = "t", title;
    std::vector<std::string> ys;
    bool log_y = false;
    plot->add_option("csv", csv, "trace CSV with a header row")->required();
    plot->add_option("-x,--x", x, "abscissa column");
    plot->add_option("-y,--y", ys, "ordinate columns")->required();
    plot->add_flag("--log-y", log_y, "logarithmic y axis");
    plot->add_option("-o,--output", svg, "output SVG (default: <out>/plot.svg)");
    plot->add_option("--title", title, "chart title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            auto config = base_config(flags, Kind::verify);
            if (level) config.level = *level == "full" ? Level::full : Level::quick;
            config.timing = config.timing || verify_timing;
            return run(config);
        }
        if (flow->parsed()) {
            auto config = base_config(flags, Kind::flow);
            apply_grid(config, flow_grid);
            if (initial) config.flow.initial = *initial;
            if (max_t) config.flow.max_t = *max_t;
            if (dt) config.flow.dt = *dt;
            config.timing = config.timing || flow_timing;
            return run(config);
        }
        if (wein->parsed()) {
            auto config = base_config(flags, Kind::weinstein);
            if (turns) config.weinstein.turns = *turns;
            if (axis) config.weinstein.axis = {(*axis)[0], (*axis)[1], (*axis)[2]};
            if (substeps) config.weinstein.substeps = *substeps;
            if (samples) config.weinstein.samples = *samples;
            if (shift) config.weinstein.hamiltonian_shift = *shift;
            return run(config);
        }
        if (moment->parsed()) {
            auto config = base_config(flags, Kind::moment_check);
            apply_grid(config, moment_grid);
            if (connection) config.moment_check.connection = *connection;
            if (probes) config.moment_check.probes = *probes;
            if (epsilon) config.moment_check.epsilon = *epsilon;
            return run(config);
        }
        if (plot->parsed()) {
            const std::filesystem::path dir = flags.out.value_or(".");
            const std::filesystem::path target = svg.empty() ? dir / "plot.svg" : std::filesystem::path(svg);
            if (!target.parent_path().empty()) std::filesystem::create_directories(target.parent_path());
            emit_plot(csv, PlotSpec{x, ys, log_y, title}, target);
            std::cout << "wrote " << target.string() << '\n';
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const momentlab::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
