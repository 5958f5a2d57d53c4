#include "generators.hpp"
#include "oracles.hpp"

#include <momentlab/error.hpp>
#include <momentlab/group_actions.hpp>
#include <momentlab/spectral.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace momentlab;
using namespace momentlab::testing;

namespace {

constexpr double pi = std::numbers::pi;

Grid grid_for(int n) { return n == 1 ? Grid(1, 64) : Grid(2, 16); }

TrigForm trig_one_form(Gen& gen, int dim, double amp)
{
    return random_trig_form(gen, dim, 1, 4, 2, amp);
}

RelativeConnection random_connection(Gen& gen, const BundlePtr& bundle)
{
    return {bundle, trig_one_form(gen, bundle->grid().dim(), 0.005).sample(bundle->grid())};
}

InvariantField random_eta(Gen& gen, const Grid& grid, double amp = 0.4)
{
    VectorField v(grid);
    for (int i = 0; i < grid.dim(); ++i) v.component(i) = random_poly(gen, grid.dim(), 4, 2, amp).sample(grid);
    return {std::move(v), random_poly(gen, grid.dim(), 4, 2, 0.1).sample(grid)};
}

ScalarField axis_field(const Grid& g, int axis, double (*f)(double))
{
    return ScalarField::sample(g, [=](std::span<const double> x) { return f(x[static_cast<std::size_t>(axis)]); });
}

double sin2pi(double x) { return std::sin(2 * pi * x); }
double cos2pi(double x) { return std::cos(2 * pi * x); }

DifferentialForm constant_one_form(const Grid& g, std::vector<double> c) { return DifferentialForm::constant(g, 1, c); }

// Exact γ = dα with γ∧ω_ref = 0: the J dψ correction cancels the trace of dα₀.
DifferentialForm tangent_exact(Gen& gen, const BundleSetup& bundle)
{
    const auto& omega = bundle.reference_curvature();
    DifferentialForm alpha = trig_one_form(gen, 4, 0.1).sample(bundle.grid());
    const ScalarField psi = spectral::inverse_laplacian(top_coefficient(wedge(exterior_derivative(alpha), omega)));
    alpha += apply_standard_j(exterior_derivative(DifferentialForm::zero_form(psi)));
    return exterior_derivative(alpha);
}

} // namespace

// pair_connection examples
TEST(PairConnection, Examples)
{
    Gen gen(1);
    const Grid grid(1, 32);
    const auto bundle = BundleSetup::standard(grid);
    const auto A = random_connection(gen, bundle);
    const ScalarField g = random_poly(gen, 2).sample(grid);
    EXPECT_EQ((pair_connection(A, InvariantField::vertical(g)) - g).max_abs(), 0.0);

    const auto v = VectorField::constant(grid, std::vector<double>{0.3, -1.2});
    EXPECT_EQ(pair_connection(RelativeConnection::reference(bundle), InvariantField::reference_horizontal(v)).max_abs(), 0.0);

    const std::vector<double> e1{1, 0};
    const RelativeConnection B(bundle, DifferentialForm::monomial(axis_field(grid, 1, sin2pi), {0}));
    const auto paired = pair_connection(B, InvariantField::reference_horizontal(VectorField::constant(grid, e1)));
    EXPECT_LT((paired - axis_field(grid, 1, sin2pi)).max_abs(), 1e-15);
}

TEST(PairConnection, GridMismatchThrows)
{
    const auto A = RelativeConnection::reference(BundleSetup::standard(Grid(1, 16)));
    EXPECT_THROW(pair_connection(A, InvariantField::vertical(ScalarField(Grid(1, 8)))), DomainError);
}

// infinitesimal_action examples
TEST(InfinitesimalAction, VerticalIsGauge)
{
    Gen gen(2);
    const Grid grid(1, 32);
    const auto A = random_connection(gen, BundleSetup::standard(grid));
    const ScalarField g = random_poly(gen, 2).sample(grid);
    const auto rho = infinitesimal_action(A, InvariantField::vertical(g));
    EXPECT_LT((rho - exterior_derivative(DifferentialForm::zero_form(g))).max_abs(), 1e-15);
}

TEST(InfinitesimalAction, ReferenceHorizontal)
{
    const Grid grid(2, 8);
    const auto bundle = BundleSetup::standard(grid);
    const std::vector<double> v{0.5, -1.0, 2.0, 0.25};
    const auto rho = infinitesimal_action(RelativeConnection::reference(bundle),
                                          InvariantField::reference_horizontal(VectorField::constant(grid, v)));
    // ι_v(dx1∧dx2 + dx3∧dx4) = v1 dx2 − v2 dx1 + v3 dx4 − v4 dx3
    const std::vector<double> expected{1.0, 0.5, -0.25, 2.0};
    EXPECT_LT((rho - constant_one_form(grid, expected)).max_abs(), 1e-15);
}

TEST(InfinitesimalAction, MatchesTranslationFlowOracle)
{
    Gen gen(3);
    for (int n : {1, 2}) {
        const Grid grid = n == 1 ? Grid(1, 32) : Grid(2, 16);
        const auto bundle = BundleSetup::standard(grid);
        for (int trial = 0; trial < 3; ++trial) {
            const TrigForm a = trig_one_form(gen, grid.dim(), 0.005);
            const TrigPoly g = random_poly(gen, grid.dim());
            std::vector<double> v(static_cast<std::size_t>(grid.dim()));
            for (auto& c : v) c = gen.real(-1, 1);
            const RelativeConnection A(bundle, a.sample(grid));
            const InvariantField eta{VectorField::constant(grid, v), g.sample(grid)};
            const auto oracle = translation_action(a, g, v, bundle->reference_curvature(), grid, 5e-4);
            EXPECT_LT((infinitesimal_action(A, eta) - oracle).max_abs(), 1e-10) << "n=" << n;
        }
    }
}

TEST(InfinitesimalAction, RejectsNonSymplecticConnection)
{
    const Grid grid(1, 16);
    const RelativeConnection bad(BundleSetup::standard(grid),
                                 DifferentialForm::monomial((-1.0 / pi) * axis_field(grid, 0, sin2pi), {1}));
    EXPECT_THROW(infinitesimal_action(bad, InvariantField::vertical(ScalarField(grid, 1.0))), NotSymplecticError);
    EXPECT_THROW(moment_pairing(bad, InvariantField::vertical(ScalarField(grid, 1.0))), NotSymplecticError);
}

// moment_pairing examples
TEST(MomentPairing, Examples)
{
    const Grid g2(1, 16);
    const auto ref2 = RelativeConnection::reference(BundleSetup::standard(g2));
    EXPECT_NEAR(moment_pairing(ref2, InvariantField::vertical(ScalarField(g2, 1.0))), 1.0, 1e-15);
    EXPECT_LT(std::abs(moment_pairing(ref2, InvariantField::vertical(axis_field(g2, 0, cos2pi)))), 1e-15);
    const Grid g4(2, 8);
    const auto ref4 = RelativeConnection::reference(BundleSetup::standard(g4));
    EXPECT_NEAR(moment_pairing(ref4, InvariantField::vertical(ScalarField(g4, 1.0))), 1.0, 1e-15);
}

// moment identity
class MomentIdentity : public ::testing::TestWithParam<int> {};

TEST_P(MomentIdentity, ResidualAndRichardsonOrderOnT2)
{
    // The pairing is a quadratic polynomial in ε on T², so the central
    // difference is exact and the measured order is rounding noise.
    Gen gen(4000 + static_cast<std::uint64_t>(GetParam()));
    const Grid grid(1, 64);
    const auto A = random_connection(gen, BundleSetup::standard(grid));
    const auto b = trig_one_form(gen, 2, 0.4).sample(grid);
    const auto probe = moment_identity_residual(A, b, random_eta(gen, grid), 1e-4);
    EXPECT_LT(probe.residual, 1e-8);
    EXPECT_GT(probe.margin, 0.0);
    EXPECT_NEAR(probe.order, 2.0, 0.2);
}

TEST_P(MomentIdentity, ResidualAndRichardsonOrderOnT4)
{
    Gen gen(4100 + static_cast<std::uint64_t>(GetParam()));
    const Grid grid(2, 16);
    const auto A = random_connection(gen, BundleSetup::standard(grid));
    const auto b = trig_one_form(gen, 4, 0.4).sample(grid);
    const auto probe = moment_identity_residual(A, b, random_eta(gen, grid), 1e-4);
    EXPECT_LT(probe.residual, 1e-8);
    EXPECT_NEAR(probe.order, 2.0, 0.2);
}

INSTANTIATE_TEST_SUITE_P(Probes, MomentIdentity, ::testing::Range(0, 5));

TEST(MomentIdentity, FirstVariationOracleOnT2)
{
    // d/dε ∫(g + (a+εb)(v))(ω_A + ε db) at ε = 0, expanded by hand.
    Gen gen(41);
    const Grid grid(1, 64);
    const auto bundle = BundleSetup::standard(grid);
    for (int trial = 0; trial < 10; ++trial) {
        const auto A = random_connection(gen, bundle);
        const auto b = trig_one_form(gen, 2, 0.4).sample(grid);
        const auto eta = random_eta(gen, grid);
        const ScalarField pairing = eta.g + evaluate(A.offset(), eta.v);
        const double first_variation = (evaluate(b, eta.v) * top_coefficient(curvature(A))).mean()
                                       + (pairing * top_coefficient(exterior_derivative(b))).mean();
        const double omega = omega_pairing(A, b, infinitesimal_action(A, eta));
        EXPECT_NEAR(first_variation, omega, 1e-12);
    }
}

TEST(MomentIdentity, VerticalConstantWithExactDirection)
{
    Gen gen(42);
    for (int n : {1, 2}) {
        const Grid grid = grid_for(n);
        const auto A = random_connection(gen, BundleSetup::standard(grid));
        const auto b = exterior_derivative(DifferentialForm::zero_form(random_poly(gen, grid.dim(), 4, 2, 0.1).sample(grid)));
        EXPECT_LT(moment_identity_residual(A, b, InvariantField::vertical(ScalarField(grid, 0.7)), 1e-4).residual, 1e-10);
    }
}

TEST(MomentIdentity, ZeroDirection)
{
    Gen gen(43);
    const Grid grid(1, 32);
    const auto A = random_connection(gen, BundleSetup::standard(grid));
    EXPECT_EQ(moment_identity_residual(A, DifferentialForm(grid, 1), random_eta(gen, grid), 1e-4).residual, 0.0);
}

TEST(MomentIdentity, ProbeLeavingConeReportsMargin)
{
    const Grid grid(1, 32);
    const auto A = RelativeConnection::reference(BundleSetup::standard(grid));
    const auto b = DifferentialForm::monomial(axis_field(grid, 0, sin2pi), {1});
    EXPECT_THROW(moment_identity_residual(A, b, InvariantField::vertical(ScalarField(grid, 1.0)), 1.0), NotSymplecticError);
    EXPECT_THROW(moment_identity_residual(A, b, InvariantField::vertical(ScalarField(grid, 1.0)), 0.0), DomainError);
}

// volume_density examples
TEST(VolumeDensity, Examples)
{
    Gen gen(5);
    const Grid grid(1, 32);
    const auto bundle = BundleSetup::standard(grid);
    EXPECT_LT((volume_density(RelativeConnection::reference(bundle))
               - DifferentialForm::monomial(ScalarField(grid, 1.0), {0, 1})).max_abs(), 1e-15);
    for (int n : {1, 2}) {
        const Grid g = grid_for(n);
        EXPECT_NEAR(integrate(volume_density(random_connection(gen, BundleSetup::standard(g)))), 1.0, 1e-13);
    }
    const double eps = 0.05;
    const RelativeConnection A(bundle, DifferentialForm::monomial(eps * axis_field(grid, 0, sin2pi), {1}));
    EXPECT_LT((top_coefficient(volume_density(A)) - (1.0 + 2 * pi * eps * axis_field(grid, 0, cos2pi))).max_abs(), 1e-13);
}

TEST(VolumeDensity, GaugeInvariant)
{
    Gen gen(6);
    for (int n : {1, 2}) {
        const Grid grid = grid_for(n);
        const auto A = random_connection(gen, BundleSetup::standard(grid));
        auto f = GaugeTransformation::periodic(random_poly(gen, grid.dim(), 3, 2, 0.3).sample(grid));
        f.winding[1] = 2;
        EXPECT_LT((volume_density(gauge_act(f, A)) - volume_density(A)).max_abs(), 1e-12);
    }
}

// gauge_act examples
TEST(GaugeAct, PeriodicKeepsCurvature)
{
    Gen gen(7);
    const Grid grid(1, 32);
    const auto A = random_connection(gen, BundleSetup::standard(grid));
    const auto f = GaugeTransformation::periodic(random_poly(gen, 2, 4, 4, 1.0).sample(grid));
    EXPECT_LT((curvature(gauge_act(f, A)) - curvature(A)).max_abs(), 1e-12);
}

TEST(GaugeAct, WindingShiftsFibreClassByTheIntegerVector)
{
    Gen gen(8);
    for (int n : {1, 2}) {
        const Grid grid = grid_for(n);
        const auto A = random_connection(gen, BundleSetup::standard(grid));
        std::vector<int> m(static_cast<std::size_t>(grid.dim()));
        for (auto& k : m) k = gen.integer(-4, 4);
        const auto c = fibre_class(gauge_act(GaugeTransformation::pure_winding(grid, m), A), A);
        for (std::size_t i = 0; i < m.size(); ++i) EXPECT_EQ(c.coefficients[i], static_cast<double>(m[i]));
        EXPECT_TRUE(c.equivalent(FibreClass{std::vector<double>(m.size(), 0.0)}));
    }
}

TEST(GaugeAct, Composition)
{
    Gen gen(9);
    const Grid grid(1, 32);
    const auto A = random_connection(gen, BundleSetup::standard(grid));
    auto f1 = GaugeTransformation::periodic(random_poly(gen, 2).sample(grid));
    auto f2 = GaugeTransformation::periodic(random_poly(gen, 2).sample(grid));
    f1.winding = {1, -2};
    f2.winding = {0, 3};
    const auto lhs = gauge_act(f2, gauge_act(f1, A));
    const auto rhs = gauge_act(f1 + f2, A);
    EXPECT_LT((lhs.offset() - rhs.offset()).max_abs(), 1e-14);
    EXPECT_EQ((f1 + f2).winding, std::vector<int>({1, 1}));
}

TEST(GaugeAct, VerticalMomentIsInvariant)
{
    Gen gen(10);
    for (int n : {1, 2}) {
        const Grid grid = grid_for(n);
        const auto A = random_connection(gen, BundleSetup::standard(grid));
        auto f = GaugeTransformation::periodic(random_poly(gen, grid.dim()).sample(grid));
        f.winding[0] = 1;
        const auto eta = InvariantField::vertical(random_poly(gen, grid.dim()).sample(grid));
        EXPECT_NEAR(moment_pairing(gauge_act(f, A), eta), moment_pairing(A, eta), 1e-12);
    }
}

// fibre_class examples
TEST(FibreClassOp, Examples)
{
    Gen gen(11);
    const Grid grid(1, 32);
    const auto A0 = random_connection(gen, BundleSetup::standard(grid));
    for (double c : fibre_class(A0, A0).coefficients) EXPECT_EQ(c, 0.0);

    const auto dchi = exterior_derivative(DifferentialForm::zero_form(random_poly(gen, 2).sample(grid)));
    const auto three = fibre_class(A0.with_offset(A0.offset() + constant_one_form(grid, {3, 0}) + dchi), A0);
    EXPECT_NEAR(three.coefficients[0], 3.0, 1e-13);
    const auto reduced = three.reduced();
    EXPECT_EQ(reduced[0], 0.0);
    EXPECT_EQ(reduced[1], 0.0);

    const auto half = fibre_class(A0.with_offset(A0.offset() + constant_one_form(grid, {0, 0.5})), A0).reduced();
    EXPECT_EQ(half[0], 0.0);
    EXPECT_NEAR(half[1], 0.5, 1e-15);
}

TEST(FibreClassOp, CurvatureMismatchThrows)
{
    const Grid grid(1, 32);
    const auto A0 = RelativeConnection::reference(BundleSetup::standard(grid));
    const auto A1 = A0.with_offset(DifferentialForm::monomial(0.01 * axis_field(grid, 0, sin2pi), {1}));
    EXPECT_THROW(fibre_class(A1, A0), DomainError);
}

// fibre_pairing examples
TEST(FibrePairing, Examples)
{
    const auto b2 = BundleSetup::standard(Grid(1, 8));
    const std::vector<double> e1{1, 0}, e2{0, 1};
    EXPECT_DOUBLE_EQ(fibre_pairing(e1, e2, *b2), 1.0);
    EXPECT_DOUBLE_EQ(fibre_pairing(e2, e1, *b2), -1.0);
    const auto b4 = BundleSetup::standard(Grid(2, 8));
    const std::vector<double> f1{1, 0, 0, 0}, f2{0, 1, 0, 0};
    EXPECT_DOUBLE_EQ(fibre_pairing(f1, f2, *b4), 1.0);
}

TEST(FibrePairing, OmegaOnHarmonicDirectionsIsTheIntersectionForm)
{
    Gen gen(12);
    for (int n : {1, 2}) {
        const Grid grid = grid_for(n);
        const auto bundle = BundleSetup::standard(grid);
        const auto A = random_connection(gen, bundle);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> a(static_cast<std::size_t>(grid.dim())), b(a.size());
            for (auto& x : a) x = gen.real(-2, 2);
            for (auto& x : b) x = gen.real(-2, 2);
            EXPECT_NEAR(omega_pairing(A, constant_one_form(grid, a), constant_one_form(grid, b)),
                        fibre_pairing(a, b, *bundle), 1e-12);
        }
    }
}

TEST(GaugeOrbits, AreIsotropic)
{
    Gen gen(13);
    for (int n : {1, 2}) {
        const Grid grid = grid_for(n);
        const auto A = random_connection(gen, BundleSetup::standard(grid));
        for (int trial = 0; trial < 5; ++trial) {
            const auto d1 = exterior_derivative(DifferentialForm::zero_form(random_poly(gen, grid.dim(), 4, 3, 1.0).sample(grid)));
            const auto d2 = exterior_derivative(DifferentialForm::zero_form(random_poly(gen, grid.dim(), 4, 3, 1.0).sample(grid)));
            EXPECT_LT(std::abs(omega_pairing(A, d1, d2)), 1e-10);
        }
    }
}

// theta_pairing examples
TEST(ThetaPairing, Examples)
{
    Gen gen(14);
    const Grid grid(2, 16);
    const auto bundle = BundleSetup::standard(grid);
    const auto& omega = bundle->reference_curvature();
    for (int trial = 0; trial < 5; ++trial) {
        const auto g1 = tangent_exact(gen, *bundle), g2 = tangent_exact(gen, *bundle);
        EXPECT_LT(wedge(g1, omega).max_abs(), 1e-12);
        EXPECT_LT(std::abs(theta_pairing(omega, g1, g1)), 1e-15);
        EXPECT_LT(std::abs(theta_pairing(omega, g1, g2) + theta_pairing(omega, g2, g1)), 1e-10);
        const auto a1 = hodge_primitive(g1), a2 = hodge_primitive(g2);
        const auto df = exterior_derivative(DifferentialForm::zero_form(random_poly(gen, 4, 4, 3, 1.0).sample(grid)));
        EXPECT_LT(std::abs(theta_pairing_from_primitives(omega, a1 + df, a2) - theta_pairing_from_primitives(omega, a1, a2)),
                  1e-10);
    }
}

TEST(ThetaPairing, Errors)
{
    Gen gen(15);
    const Grid grid(2, 8);
    const auto bundle = BundleSetup::standard(grid);
    const auto& omega = bundle->reference_curvature();
    const auto nontangent = exterior_derivative(trig_one_form(gen, 4, 0.1).sample(grid));
    EXPECT_THROW(theta_pairing(omega, nontangent, nontangent), DomainError);
    // dx1∧dx3 is tangent (wedge with ω vanishes) but not exact
    const std::vector<double> c{0, 1, 0, 0, 0, 0};
    const auto harmonic = DifferentialForm::constant(grid, 2, c);
    EXPECT_THROW(theta_pairing(omega, harmonic, harmonic), DomainError);
    const Grid g2(1, 8);
    EXPECT_THROW(theta_pairing(BundleSetup::standard(g2)->reference_curvature(), DifferentialForm(g2, 2), DifferentialForm(g2, 2)),
                 DomainError);
}

// horizontal_preimage examples
TEST(HorizontalPreimage, Examples)
{
    const Grid grid(1, 8);
    const auto A = RelativeConnection::reference(BundleSetup::standard(grid));
    const auto eta = horizontal_preimage(A, constant_one_form(grid, {1, 0}));
    EXPECT_DOUBLE_EQ(eta.v.component(0).max_abs(), 0.0);
    EXPECT_DOUBLE_EQ(eta.v.component(1).max(), -1.0);
    EXPECT_DOUBLE_EQ(eta.v.component(1).min(), -1.0);
    EXPECT_EQ(eta.g.max_abs(), 0.0);
    const auto zero = horizontal_preimage(A, DifferentialForm(grid, 1));
    EXPECT_EQ(zero.v.max_abs(), 0.0);
    EXPECT_EQ(zero.g.max_abs(), 0.0);
}

TEST(HorizontalPreimage, RoundTrip)
{
    Gen gen(16);
    for (int n : {1, 2}) {
        const Grid grid = grid_for(n);
        const auto A = random_connection(gen, BundleSetup::standard(grid));
        for (int trial = 0; trial < 5; ++trial) {
            const auto a = trig_one_form(gen, grid.dim(), 0.5).sample(grid);
            const auto eta = horizontal_preimage(A, a);
            EXPECT_LT(pair_connection(A, eta).max_abs(), 1e-15);
            EXPECT_LT((infinitesimal_action(A, eta) - a).max_abs(), 1e-10);
        }
    }
}

// separation_witness examples
TEST(SeparationWitness, EpsilonDx1)
{
    const Grid grid(1, 16);
    const auto bundle = BundleSetup::standard(grid);
    const double eps = 0.03;
    const RelativeConnection A(bundle, constant_one_form(grid, {eps, 0}));
    const auto w = separation_witness(A, RelativeConnection::reference(bundle));
    EXPECT_NEAR(w.gap, eps * eps, 1e-16);
    EXPECT_EQ(w.other_pairing, 0.0);
}

TEST(SeparationWitness, RandomPairs)
{
    Gen gen(17);
    for (int n : {1, 2}) {
        const Grid grid = grid_for(n);
        const auto bundle = BundleSetup::standard(grid);
        for (int trial = 0; trial < 5; ++trial) {
            const auto A = random_connection(gen, bundle), B = random_connection(gen, bundle);
            const auto w = separation_witness(A, B);
            EXPECT_GT(w.gap, 0.0);
            EXPECT_LT(std::abs(w.other_pairing), 1e-12);
            EXPECT_LT(std::abs(moment_pairing(B, w.eta)), 1e-12);
            // gap = 1/n! ∫ |δ|² ω_Aⁿ
            const auto delta = A.offset() - B.offset();
            EXPECT_NEAR(w.gap, integrate(pointwise_norm_sq(delta) * volume_density(A)), 1e-14);
        }
    }
}

TEST(SeparationWitness, IdenticalConnectionsThrow)
{
    const auto A = RelativeConnection::reference(BundleSetup::standard(Grid(1, 8)));
    try {
        separation_witness(A, A);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("identical connections"), std::string::npos);
    }
}

TEST(ResidualRecord, JsonShape)
{
    const auto j = to_json(ResidualRecord{"x", 0xabcULL, 1e-9, std::nan(""), 0.5});
    EXPECT_EQ(j.at("name"), "x");
    EXPECT_EQ(j.at("inputs_hash"), "0000000000000abc");
    EXPECT_TRUE(j.at("order").is_null());
    EXPECT_EQ(j.at("margin"), 0.5);
}

TEST(Hash, SensitiveToSamples)
{
    ScalarField a(Grid(1, 8), 1.0), b(Grid(1, 8), 1.0);
    EXPECT_EQ(hash_fields({&a}), hash_fields({&b}));
    b[3] = std::nextafter(1.0, 2.0);
    EXPECT_NE(hash_fields({&a}), hash_fields({&b}));
}
