#include <momentlab/lab/experiments.hpp>

#include <momentlab/field_io.hpp>
#include <momentlab/holonomy.hpp>
#include <momentlab/random_fields.hpp>
#include <momentlab/spectral.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>

namespace momentlab::lab {

namespace {

constexpr double pi = std::numbers::pi;

// Small offsets keep random connections well inside S.
const TrigSpec connection_spec{4, 2, 0.005, false};
const TrigSpec probe_spec{4, 2, 0.4, false};
const TrigSpec potential_spec{4, 2, 0.01, false};

RelativeConnection random_connection(const BundlePtr& bundle, Rng& rng)
{
    return {bundle, random_form(bundle->grid(), 1, rng, connection_spec)};
}

// Exact 2-form dα with dα∧ω = 0 for the constant Kähler form ω_ref,
// obtained by correcting a random α₀ with J dψ, Δψ = −Λdα₀.
DifferentialForm random_tangent_exact(const BundleSetup& bundle, Rng& rng)
{
    const DifferentialForm& omega = bundle.reference_curvature();
    DifferentialForm alpha = random_form(bundle.grid(), 1, rng);
    const ScalarField trace = top_coefficient(wedge(exterior_derivative(alpha), omega));
    const ScalarField psi = spectral::inverse_laplacian(trace);
    alpha += apply_standard_j(exterior_derivative(DifferentialForm::zero_form(psi)));
    return exterior_derivative(alpha);
}

double relative(double value, double reference) { return std::abs(value - reference) / std::max(std::abs(reference), 1e-300); }

class Suite {
public:
    Suite(RunReport& report, bool timing) : report_(report), timing_(timing) {}

    // Runs one named group; exceptions become failing records.
    void run(const std::string& name, const std::function<void(RunReport&)>& body)
    {
        Stopwatch watch(timing_);
        const std::size_t first = report_.records.size();
        try {
            body(report_);
        } catch (const std::exception& e) {
            report_.require(name, false, std::numeric_limits<double>::quiet_NaN(), 0.0).note = e.what();
        }
        if (report_.records.size() > first) report_.records.back().wall_ms = watch.elapsed_ms();
    }

private:
    RunReport& report_;
    bool timing_;
};

void forms_checks(Suite& suite, const Grid& grid, Rng& rng, const std::string& tag)
{
    suite.run("d_squared_" + tag, [&](RunReport& r) {
        double worst = 0.0;
        for (int deg = 0; deg + 2 <= grid.dim(); ++deg) {
            const auto f = random_form(grid, deg, rng);
            worst = std::max(worst, exterior_derivative(exterior_derivative(f)).max_abs());
        }
        r.below("d_squared_" + tag, worst, 1e-12);
    });
    suite.run("leibniz_" + tag, [&](RunReport& r) {
        double worst = 0.0;
        for (int p = 0; p + 1 < grid.dim(); ++p) {
            for (int q = 0; p + q + 1 < grid.dim(); ++q) {
                const auto f = random_form(grid, p, rng);
                const auto g = random_form(grid, q, rng);
                DifferentialForm rhs = wedge(exterior_derivative(f), g);
                DifferentialForm second = wedge(f, exterior_derivative(g));
                if (p % 2 == 1) second *= -1.0;
                rhs += second;
                worst = std::max(worst, (exterior_derivative(wedge(f, g)) - rhs).max_abs());
            }
        }
        r.below("leibniz_" + tag, worst, 1e-10);
    });
    suite.run("stokes_" + tag, [&](RunReport& r) {
        const auto f = random_form(grid, grid.dim() - 1, rng);
        r.below("stokes_" + tag, std::abs(integrate(exterior_derivative(f))), 1e-12);
    });
    suite.run("hodge_primitive_" + tag, [&](RunReport& r) {
        double worst = 0.0;
        for (int deg = 1; deg < grid.dim(); ++deg) {
            const auto g = exterior_derivative(random_form(grid, deg - 1, rng));
            worst = std::max(worst, (exterior_derivative(hodge_primitive(g)) - g).max_abs());
        }
        r.below("hodge_primitive_" + tag, worst, 1e-10);
    });
}

void connection_checks(Suite& suite, const BundlePtr& bundle, Rng& rng, const std::string& tag)
{
    const Grid& grid = bundle->grid();
    const double tol_positivity = grid.half_dim() == 1 ? 1e-10 : 0.1;
    suite.run("omega_bilinear_" + tag, [&](RunReport& r) {
        const auto A = random_connection(bundle, rng);
        const auto a = random_form(grid, 1, rng), a2 = random_form(grid, 1, rng), b = random_form(grid, 1, rng);
        const double s = uniform(rng, -2.0, 2.0), t = uniform(rng, -2.0, 2.0);
        const double lhs = omega_pairing(A, s * a + t * a2, b);
        const double rhs = s * omega_pairing(A, a, b) + t * omega_pairing(A, a2, b);
        const double lhs2 = omega_pairing(A, b, s * a + t * a2);
        const double rhs2 = s * omega_pairing(A, b, a) + t * omega_pairing(A, b, a2);
        r.below("omega_bilinear_" + tag, std::max(std::abs(lhs - rhs), std::abs(lhs2 - rhs2)), 1e-12);
    });
    suite.run("omega_positivity_" + tag, [&](RunReport& r) {
        const auto A = random_connection(bundle, rng);
        const ScalarField rho = top_coefficient(volume_density(A));
        double worst = 0.0;
        bool positive = true;
        for (int i = 0; i < 50; ++i) {
            const auto a = random_form(grid, 1, rng);
            const double lhs = omega_pairing(A, a, apply_compatible_j(A, a));
            const double rhs = (compatible_norm_sq(A, a) * rho).mean();
            positive = positive && lhs > 0.0;
            worst = std::max(worst, relative(lhs, rhs));
        }
        r.require("omega_positivity_" + tag, positive && worst < tol_positivity, worst, tol_positivity);
    });
    suite.run("omega_gauge_invariant_" + tag, [&](RunReport& r) {
        const auto A = random_connection(bundle, rng);
        const auto a = random_form(grid, 1, rng), b = random_form(grid, 1, rng);
        std::vector<int> winding(static_cast<std::size_t>(grid.dim()), 0);
        winding[0] = 1;
        const auto f = GaugeTransformation::periodic(random_trig_field(grid, rng))
            + GaugeTransformation::pure_winding(grid, winding);
        r.below("omega_gauge_invariant_" + tag,
                std::abs(omega_pairing(gauge_act(f, A), a, b) - omega_pairing(A, a, b)), 1e-12);
    });
    if (grid.half_dim() == 2) {
        suite.run("d_omega_" + tag, [&](RunReport& r) {
            double worst = 0.0;
            for (int i = 0; i < 20; ++i) {
                const auto A = random_connection(bundle, rng);
                worst = std::max(worst, std::abs(d_omega_residual(A, random_form(grid, 1, rng), random_form(grid, 1, rng),
                                                                  random_form(grid, 1, rng))));
            }
            r.below("d_omega_" + tag, worst, 1e-10);
        });
        suite.run("contraction_identity_" + tag, [&](RunReport& r) {
            double worst = 0.0;
            for (int i = 0; i < 5; ++i) {
                const auto A = random_connection(bundle, rng);
                worst = std::max(worst, contraction_identity_residual(random_form(grid, 1, rng), curvature(A),
                                                                      random_vector_field(grid, rng)));
            }
            r.below("contraction_identity_" + tag, worst, 1e-12);
        });
    }
}

void moment_checks(Suite& suite, const BundlePtr& bundle, Rng& rng, const std::string& tag, int probes)
{
    const Grid& grid = bundle->grid();
    suite.run("moment_identity_" + tag, [&](RunReport& r) {
        double worst = 0.0, worst_order = 0.0, floor = 0.0;
        for (int i = 0; i < probes; ++i) {
            const auto A = random_connection(bundle, rng);
            const auto b = random_form(grid, 1, rng, probe_spec);
            const InvariantField eta{random_vector_field(grid, rng, probe_spec), random_trig_field(grid, rng)};
            const auto probe = moment_identity_residual(A, b, eta, 1e-4);
            worst = std::max(worst, probe.residual);
            floor = std::max(floor, probe.rounding_floor);
            const double dev = std::isfinite(probe.order) ? std::abs(probe.order - 2.0) : std::numeric_limits<double>::infinity();
            worst_order = std::max(worst_order, dev);
        }
        r.below("moment_identity_" + tag, worst, 1e-8);
        auto& rec = r.below("moment_identity_order_" + tag, worst_order, 0.2);
        if (worst < floor) rec.note = "residuals below the rounding floor; central difference is exact";
    });
    suite.run("moment_gauge_checks_" + tag, [&](RunReport& r) {
        const auto A = random_connection(bundle, rng);
        const auto f = GaugeTransformation::periodic(random_trig_field(grid, rng));
        const auto fA = gauge_act(f, A);
        r.below("volume_gauge_invariant_" + tag, (volume_density(fA) - volume_density(A)).max_abs(), 1e-12);
        const auto eta = InvariantField::vertical(random_trig_field(grid, rng));
        r.below("moment_equivariance_vertical_" + tag, std::abs(moment_pairing(fA, eta) - moment_pairing(A, eta)), 1e-12);
    });
    suite.run("isotropy_" + tag, [&](RunReport& r) {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const auto A = random_connection(bundle, rng);
            const auto d1 = exterior_derivative(DifferentialForm::zero_form(random_trig_field(grid, rng)));
            const auto d2 = exterior_derivative(DifferentialForm::zero_form(random_trig_field(grid, rng)));
            worst = std::max(worst, std::abs(omega_pairing(A, d1, d2)));
        }
        r.below("isotropy_" + tag, worst, 1e-10);
    });
    suite.run("fibre_structure_" + tag, [&](RunReport& r) {
        const auto A = random_connection(bundle, rng);
        double worst = 0.0;
        const int dim = grid.dim();
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                std::vector<double> ei(static_cast<std::size_t>(dim)), ej(static_cast<std::size_t>(dim));
                ei[static_cast<std::size_t>(i)] = 1.0;
                ej[static_cast<std::size_t>(j)] = 1.0;
                const double omega = omega_pairing(A, DifferentialForm::constant(grid, 1, ei),
                                                   DifferentialForm::constant(grid, 1, ej));
                worst = std::max(worst, std::abs(omega - fibre_pairing(ei, ej, *bundle)));
            }
        }
        r.below("fibre_structure_" + tag, worst, 1e-12);
        std::vector<int> winding(static_cast<std::size_t>(dim));
        for (auto& m : winding) m = static_cast<int>(std::floor(uniform(rng, -3.0, 4.0)));
        const auto f = GaugeTransformation::periodic(random_trig_field(grid, rng))
            + GaugeTransformation::pure_winding(grid, winding);
        const auto cls = fibre_class(gauge_act(f, A), A);
        double shift = 0.0;
        for (std::size_t k = 0; k < winding.size(); ++k) shift = std::max(shift, std::abs(cls.coefficients[k] - winding[k]));
        r.below("fibre_winding_shift_" + tag, shift, 1e-12);
    });
    suite.run("witnesses_" + tag, [&](RunReport& r) {
        double roundtrip = 0.0, other = 0.0, min_gap = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 20; ++i) {
            const auto A = random_connection(bundle, rng);
            const auto a = random_form(grid, 1, rng);
            const auto eta = horizontal_preimage(A, a);
            roundtrip = std::max(roundtrip, (infinitesimal_action(A, eta) - a).max_abs());
            const auto B = random_connection(bundle, rng);
            const auto w = separation_witness(A, B);
            other = std::max(other, std::abs(w.other_pairing));
            min_gap = std::min(min_gap, w.gap);
        }
        r.below("horizontal_preimage_" + tag, roundtrip, 1e-10);
        r.require("separation_gap_" + tag, min_gap > 0.0, min_gap, 0.0);
        r.below("separation_other_pairing_" + tag, other, 1e-12);
    });
    if (grid.half_dim() == 2) {
        suite.run("theta_pairing_" + tag, [&](RunReport& r) {
            const auto& omega = bundle->reference_curvature();
            double anti = 0.0, shift = 0.0;
            for (int i = 0; i < 5; ++i) {
                const auto g1 = random_tangent_exact(*bundle, rng);
                const auto g2 = random_tangent_exact(*bundle, rng);
                anti = std::max(anti, std::abs(theta_pairing(omega, g1, g2) + theta_pairing(omega, g2, g1)));
                const auto a1 = hodge_primitive(g1), a2 = hodge_primitive(g2);
                const auto df = exterior_derivative(DifferentialForm::zero_form(random_trig_field(grid, rng)));
                shift = std::max(shift, std::abs(theta_pairing_from_primitives(omega, a1 + df, a2)
                                                 - theta_pairing_from_primitives(omega, a1, a2)));
            }
            r.below("theta_antisymmetry_" + tag, anti, 1e-10);
            r.below("theta_exact_shift_" + tag, shift, 1e-10);
        });
    }
}

void kahler_checks(Suite& suite, const BundlePtr& bundle, Rng& rng, const std::string& tag)
{
    const Grid& grid = bundle->grid();
    suite.run("complex_action_" + tag, [&](RunReport& r) {
        const auto A = random_connection(bundle, rng);
        const auto phi = random_trig_field(grid, rng, potential_spec);
        r.below("complex_action_curvature_" + tag,
                (curvature(complex_gauge_act(phi, A)) - kahler_form(phi, curvature(A))).max_abs(), 1e-10);
        const auto f = GaugeTransformation::periodic(random_trig_field(grid, rng));
        const ComplexGaugeTransformation unitary{ScalarField(grid), f};
        r.below("complex_action_unitary_" + tag,
                (complex_gauge_act(unitary, A).offset() - gauge_act(f, A).offset()).max_abs(), 1e-12);
    });
    suite.run("kempf_ness_convexity_" + tag, [&](RunReport& r) {
        const auto theta = VolumeSpec::cosine_modes(grid, cosine_preset(grid.half_dim()));
        double worst = grid.half_dim() == 1 ? 0.0 : std::numeric_limits<double>::infinity();
        for (int i = 0; i < 20; ++i) {
            const auto phi = random_trig_field(grid, rng, potential_spec);
            const auto psi = random_trig_field(grid, rng, potential_spec);
            const double delta = grid.half_dim() == 1 ? 0.5 : 0.1;
            const double second = (kempf_ness(*bundle, phi + delta * psi, theta) + kempf_ness(*bundle, phi - delta * psi, theta)
                                   - 2.0 * kempf_ness(*bundle, phi, theta))
                / (delta * delta);
            if (grid.half_dim() == 1) {
                double grad = 0.0;
                for (const auto& c : spectral::gradient(psi)) grad += (c * c).mean();
                worst = std::max(worst, relative(second, grad / (4.0 * pi)));
            } else {
                worst = std::min(worst, second);
            }
        }
        if (grid.half_dim() == 1) r.below("kempf_ness_second_difference_" + tag, worst, 1e-8);
        else r.require("kempf_ness_convexity_" + tag, worst >= -1e-10, worst, -1e-10);
    });
}

void flow_checks(Suite& suite, Rng& rng)
{
    const Grid grid(1, 32);
    const auto bundle = BundleSetup::standard(grid);
    const auto theta = VolumeSpec::cosine_modes(grid, cosine_preset(1));
    suite.run("flow_t2", [&](RunReport& r) {
        const auto first = run_flow(*bundle, theta, KahlerPotential::zero(*bundle));
        double increase = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < first.trace.size(); ++i) {
            increase = std::max(increase, first.trace[i].energy - first.trace[i - 1].energy);
        }
        r.below("flow_residual_t2", first.trace.back().residual, 1e-8);
        r.require("flow_energy_monotone_t2", increase <= 1e-12, increase, 1e-12);
        r.below("flow_linear_oracle_t2", (first.phi.values() - linear_oracle(*bundle, theta).values()).max_abs(), 1e-6);
        const auto start = KahlerPotential::make(*bundle, random_trig_field(grid, rng, potential_spec));
        const auto second = run_flow(*bundle, theta, start);
        r.below("flow_uniqueness_t2", (first.phi.values() - second.phi.values()).max_abs(), 1e-5);
    });
}

void holonomy_checks(Suite& suite)
{
    using namespace weinstein;
    suite.run("weinstein", [&](RunReport& r) {
        const auto one = weinstein_hom(LoopSpec{{0, 0, 1}, 1, 0, 0.0});
        r.below("weinstein_single_turn", std::abs(one.phase + 1.0), 1e-6);
        r.below("weinstein_variance", one.variance, 1e-8);
        r.below("weinstein_unit_modulus", std::abs(std::abs(one.phase) - 1.0), 1e-10);
        const auto two = weinstein_hom(LoopSpec{{0, 0, 1}, 2, 0, 0.0});
        r.below("weinstein_double_turn", std::abs(two.phase - 1.0), 1e-6);
        const auto x_axis = weinstein_hom(LoopSpec{{1, 0, 0}, 1, 0, 0.0});
        r.below("weinstein_axis_independence", std::abs(x_axis.phase - one.phase), 1e-6);
        const double c = 0.125;
        const auto shifted = weinstein_hom(LoopSpec{{0, 0, 1}, 1, 0, c});
        const auto expected = one.phase * std::polar(1.0, -2.0 * pi * c);
        r.below("weinstein_shift_phase", std::abs(shifted.phase - expected), 1e-6);
        const std::vector<LoopSpec> pair{LoopSpec{{0, 0, 1}, 1, 0, 0.0}, LoopSpec{{0, 0, 1}, 2, 0, 0.0}};
        const auto joined = weinstein_hom(pair);
        r.below("weinstein_homomorphism", std::abs(joined.phase - one.phase * two.phase), 1e-5);
    });
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc)
{
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

RunReport run_flow_kind(const ExperimentConfig& config)
{
    RunReport report{"flow", config.seed, {}, nlohmann::json::object()};
    const Grid grid = config.grid();
    const auto bundle = BundleSetup::standard(grid);
    VolumeSpec theta = VolumeSpec::flat(grid);
    try {
        if (config.flow.theta_file) {
            const auto loaded = io::read_field(*config.flow.theta_file);
            if (!(loaded.form.grid() == grid)) throw ConfigError("theta file grid does not match the configured grid");
            if (loaded.form.degree() != 0 && loaded.form.degree() != grid.dim()) {
                throw ConfigError("theta file must hold a function or a top-degree form");
            }
            theta = VolumeSpec(loaded.form.component(0));
        } else {
            theta = VolumeSpec::cosine_modes(grid, config.flow.theta);
        }
    } catch (const DomainError& e) {
        throw ConfigError(std::string("theta: ") + e.what());
    } catch (const IoError& e) {
        throw ConfigError(std::string("theta: ") + e.what());
    }
    Rng rng(config.seed);
    const KahlerPotential start = config.flow.initial == "zero"
        ? KahlerPotential::zero(*bundle)
        : KahlerPotential::make(*bundle, random_trig_field(grid, rng, potential_spec));
    FlowOptions options{config.tolerance(), config.flow.max_t, config.flow.dt, config.timing};

    std::vector<TraceRow> trace;
    std::optional<KahlerPotential> final_phi;
    Stopwatch watch(config.timing);
    try {
        auto result = run_flow(*bundle, theta, start, options);
        trace = std::move(result.trace);
        final_phi = std::move(result.phi);
    } catch (const FlowDivergedError& e) {
        trace = e.trace();
        report.require("flow_converged", false, trace.empty() ? 0.0 : trace.back().residual, config.tolerance()).note
            = e.what();
    }
    write_trace_csv(config.out / "trace.csv", trace);
    report.artifacts["trace"] = "trace.csv";
    if (final_phi) {
        report.below("flow_converged", trace.back().residual, config.tolerance()).wall_ms = watch.elapsed_ms();
        io::write_field(config.out / "phi", DifferentialForm::zero_form(final_phi->values()));
        report.artifacts["phi"] = "phi.bin";
    }
    double increase = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < trace.size(); ++i) increase = std::max(increase, trace[i].energy - trace[i - 1].energy);
    if (trace.size() > 1) report.require("flow_energy_monotone", increase <= 1e-12, increase, 1e-12);
    if (final_phi && grid.half_dim() == 1) {
        report.below("flow_linear_oracle", (final_phi->values() - linear_oracle(*bundle, theta).values()).max_abs(), 1e-6);
    }
    return report;
}

RunReport run_weinstein_kind(const ExperimentConfig& config)
{
    using namespace weinstein;
    RunReport report{"weinstein", config.seed, {}, nlohmann::json::object()};
    const auto& w = config.weinstein;
    const LoopSpec loop{w.axis, w.turns, w.substeps, w.hamiltonian_shift};
    Stopwatch watch(config.timing);
    try {
        const auto result = weinstein_hom(loop, w.samples, config.seed);
        write_json(config.out / "weinstein.json", to_json(loop, result));
        report.artifacts["holonomy"] = "weinstein.json";
        const auto expected = std::polar(1.0, pi * w.turns - 2.0 * pi * w.hamiltonian_shift * w.turns);
        report.below("weinstein_phase", std::abs(result.phase - expected), config.tolerance()).wall_ms
            = watch.elapsed_ms();
        report.below("weinstein_variance", result.variance, 1e-8);
        report.below("weinstein_unit_modulus", std::abs(std::abs(result.phase) - 1.0), 1e-10);
    } catch (const NumericalError& e) {
        report.require("weinstein_phase", false, std::numeric_limits<double>::quiet_NaN(), config.tolerance()).note
            = e.what();
    }
    return report;
}

RunReport run_moment_kind(const ExperimentConfig& config)
{
    RunReport report{"moment-check", config.seed, {}, nlohmann::json::object()};
    Rng rng(config.seed);
    const auto connection = [&] {
        if (!config.moment_check.connection) {
            const Grid grid = config.grid();
            return random_connection(BundleSetup::standard(grid), rng);
        }
        try {
            return read_connection(*config.moment_check.connection);
        } catch (const IoError& e) {
            throw ConfigError(e.what());
        }
    }();
    const Grid& grid = connection.grid();
    nlohmann::json records = nlohmann::json::array();
    double worst = 0.0, worst_order = 0.0;
    Stopwatch watch(config.timing);
    for (int i = 0; i < config.moment_check.probes; ++i) {
        const auto b = random_form(grid, 1, rng, probe_spec);
        const InvariantField eta{random_vector_field(grid, rng, probe_spec), random_trig_field(grid, rng)};
        const auto probe = moment_identity_residual(connection, b, eta, config.moment_check.epsilon);
        ResidualRecord rec{"moment_identity_" + std::to_string(i),
                           hash_form(b, hash_form(connection.offset(), hash_fields({&eta.g}))),
                           probe.residual, probe.order, probe.margin};
        for (int k = 0; k < eta.v.dim(); ++k) rec.inputs_hash ^= hash_fields({&eta.v.component(k)}) + static_cast<unsigned>(k);
        records.push_back(to_json(rec));
        worst = std::max(worst, probe.residual);
        worst_order = std::max(worst_order, std::isfinite(probe.order) ? std::abs(probe.order - 2.0)
                                                                         : std::numeric_limits<double>::infinity());
    }
    write_json(config.out / "moment_check.json", records);
    report.artifacts["probes"] = "moment_check.json";
    report.below("moment_identity", worst, config.tolerance()).wall_ms = watch.elapsed_ms();
    report.below("moment_identity_order", worst_order, 0.2);
    return report;
}

} // namespace

RunReport verify_suite(std::uint64_t seed, Level level, bool timing)
{
    RunReport report{"verify", seed, {}, nlohmann::json::object()};
    Suite suite(report, timing);
    Rng rng(seed);
    {
        const Grid grid(1, 64);
        const auto bundle = BundleSetup::standard(grid);
        forms_checks(suite, grid, rng, "t2");
        connection_checks(suite, bundle, rng, "t2");
        moment_checks(suite, bundle, rng, "t2", 20);
        kahler_checks(suite, bundle, rng, "t2");
        flow_checks(suite, rng);
    }
    holonomy_checks(suite);
    if (level == Level::full) {
        const Grid grid(2, 16);
        const auto bundle = BundleSetup::standard(grid);
        forms_checks(suite, grid, rng, "t4");
        connection_checks(suite, bundle, rng, "t4");
        moment_checks(suite, bundle, rng, "t4", 5);
        kahler_checks(suite, bundle, rng, "t4");
    }
    return report;
}

RunReport run_experiment(const ExperimentConfig& config)
{
    validate(config);
    std::error_code ec;
    std::filesystem::create_directories(config.out, ec);
    if (ec) throw ConfigError("cannot create output directory " + config.out.string() + ": " + ec.message());
    write_json(config.out / "config.json", to_json(config));

    RunReport report;
    switch (config.kind) {
    case Kind::verify: report = verify_suite(config.seed, config.level, config.timing); break;
    case Kind::flow: report = run_flow_kind(config); break;
    case Kind::weinstein: report = run_weinstein_kind(config); break;
    case Kind::moment_check: report = run_moment_kind(config); break;
    }
    report.artifacts["config"] = "config.json";
    write_report(report, config.out);
    return report;
}

} // namespace momentlab::lab
