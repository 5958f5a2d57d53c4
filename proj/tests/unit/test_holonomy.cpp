#include "generators.hpp"
#include "oracles.hpp"

#include <momentlab/holonomy.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace momentlab::weinstein;
using momentlab::DomainError;

namespace {

constexpr double pi = std::numbers::pi;
using cplx = std::complex<double>;

LoopSpec loop(R3 axis, int turns, int substeps = 0, double shift = 0.0) { return {axis, turns, substeps, shift}; }

} // namespace

// loop_holonomy examples
TEST(LoopHolonomy, SingleTurnIsMinusOne)
{
    const auto r = loop_holonomy(loop({0, 0, 1}, 1));
    EXPECT_LT(std::abs(r.phase - cplx(-1, 0)), 1e-6);
    EXPECT_LT(r.variance, 1e-8);
    EXPECT_NEAR(std::abs(r.phase), 1.0, 1e-10);
    EXPECT_EQ(r.substeps, 1000);
    EXPECT_EQ(r.step_count, 1000);
}

TEST(LoopHolonomy, DoubleTurnIsPlusOne)
{
    const auto r = loop_holonomy(loop({0, 0, 1}, 2));
    EXPECT_LT(std::abs(r.phase - cplx(1, 0)), 1e-6);
    EXPECT_EQ(r.substeps, 2000);
}

TEST(LoopHolonomy, ConstantLoopIsExactlyOne)
{
    const auto r = loop_holonomy(loop({0, 0, 1}, 0));
    EXPECT_EQ(r.phase, cplx(1, 0));
    EXPECT_LT(r.variance, 1e-30);
}

TEST(LoopHolonomy, ReversedLoopIsMinusOne)
{
    EXPECT_LT(std::abs(loop_holonomy(loop({1, 0, 0}, -1)).phase - cplx(-1, 0)), 1e-6);
}

TEST(LoopHolonomy, TimeOneMapIsScalar)
{
    // every sampled start point is multiplied by the same λ
    momentlab::testing::Gen gen(3);
    for (int i = 0; i < 20; ++i) {
        const PrequantumPoint z0{momentlab::testing::random_unit_c2(gen)};
        const std::vector<LoopSpec> segs{loop(momentlab::testing::random_unit_r3(gen), 1, 1000)};
        const auto z1 = integrate_loop(segs, z0);
        EXPECT_NEAR(z1.norm_sq(), 1.0, 1e-14);
        EXPECT_LT(std::abs(z1.z[0] + z0.z[0]) + std::abs(z1.z[1] + z0.z[1]), 1e-9);
    }
}

TEST(LoopHolonomy, PreconditionsAreEnforced)
{
    EXPECT_THROW(loop_holonomy(loop({0, 0, 1}, 2, 1500)), DomainError);
    EXPECT_THROW(loop_holonomy(loop({0, 0, 1}, 1), 1), DomainError);
}

TEST(LoopHolonomy, SubstepFloorIsPerTurn)
{
    try {
        loop_holonomy(loop({0, 0, 1}, 3, 2999));
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("substeps"), std::string::npos);
    }
    EXPECT_LT(std::abs(loop_holonomy(loop({0, 0, 1}, 3, 3000)).phase - cplx(-1, 0)), 1e-6);
}

TEST(LoopHolonomy, HamiltonianShiftMultipliesPhase)
{
    for (double c : {0.125, 0.3, -0.45}) {
        for (int turns : {1, 2}) {
            const auto base = loop_holonomy(loop({0, 0, 1}, turns));
            const auto shifted = loop_holonomy(loop({0, 0, 1}, turns, 0, c));
            const cplx expected = base.phase * std::polar(1.0, -2 * pi * c * turns);
            EXPECT_LT(std::abs(shifted.phase - expected), 1e-6) << c << " " << turns;
        }
    }
}

TEST(LoopHolonomy, AxisIndependence)
{
    const auto z = loop_holonomy(loop({0, 0, 1}, 1));
    for (R3 axis : {R3{1, 0, 0}, R3{0, 1, 0}, R3{0.3, -0.5, 0.8}}) {
        EXPECT_LT(std::abs(loop_holonomy(loop(axis, 1)).phase - z.phase), 1e-6);
    }
}

TEST(LoopHolonomy, RungeKuttaConvergenceOrder)
{
    // error of the transported point against the exact −z0, as substeps double
    momentlab::testing::Gen gen(4);
    const PrequantumPoint z0{momentlab::testing::random_unit_c2(gen)};
    std::vector<double> errors;
    for (int s : {16, 32, 64, 128}) {
        const std::vector<LoopSpec> segs{loop({0.2, 0.4, 0.9}, 1, s)};
        const auto z1 = integrate_loop(segs, z0);
        errors.push_back(std::abs(z1.z[0] + z0.z[0]) + std::abs(z1.z[1] + z0.z[1]));
    }
    // least-squares slope of log error against log substeps
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        const double x = std::log(16.0 * std::pow(2.0, static_cast<double>(i))), y = std::log(errors[i]);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    const double n = static_cast<double>(errors.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    EXPECT_NEAR(slope, -4.0, 0.5);
}

TEST(LoopHolonomy, DeterministicForSeed)
{
    const auto a = loop_holonomy(loop({0, 1, 0}, 1), 16, 9);
    const auto b = loop_holonomy(loop({0, 1, 0}, 1), 16, 9);
    EXPECT_EQ(a.phase, b.phase);
    EXPECT_EQ(a.variance, b.variance);
}

// weinstein_hom examples
TEST(WeinsteinHom, GeneratorMapsToMinusOne)
{
    const auto r = weinstein_hom(loop({0, 0, 1}, 1));
    EXPECT_LT(std::abs(r.phase - cplx(-1, 0)), 1e-6);
    EXPECT_GE(r.substeps, 1000);
}

TEST(WeinsteinHom, HomomorphismOnConcatenations)
{
    const LoopSpec one = loop({0, 0, 1}, 1), two = loop({0, 0, 1}, 2);
    const std::vector<LoopSpec> one_two{one, two}, one_one{one, one};
    const auto w1 = weinstein_hom(one).phase, w2 = weinstein_hom(two).phase;
    EXPECT_LT(std::abs(weinstein_hom(one_two).phase - w1 * w2), 1e-5);
    EXPECT_LT(std::abs(weinstein_hom(one_one).phase - w1 * w1), 1e-5);
    // a loop followed by its inverse is contractible
    const std::vector<LoopSpec> there_and_back{one, loop({0, 0, 1}, -1)};
    EXPECT_LT(std::abs(weinstein_hom(there_and_back).phase - cplx(1, 0)), 1e-5);
}

TEST(WeinsteinHom, AxisIndependence)
{
    EXPECT_LT(std::abs(weinstein_hom(loop({1, 0, 0}, 1)).phase - weinstein_hom(loop({0, 0, 1}, 1)).phase), 1e-6);
}

TEST(WeinsteinHom, JsonRecord)
{
    const LoopSpec l = loop({0, 0, 1}, 1);
    const auto j = to_json(l, weinstein_hom(l));
    for (const char* key : {"axis", "turns", "substeps", "lambda_re", "lambda_im", "variance"}) EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_NEAR(j.at("lambda_re").get<double>(), -1.0, 1e-6);
}

TEST(WeinsteinHom, ConvergenceErrorCarriesTrace)
{
    const WeinsteinConvergenceError e("x", {{1000, cplx(1, 0)}, {2000, cplx(-1, 0)}});
    EXPECT_EQ(e.trace().size(), 2u);
}
