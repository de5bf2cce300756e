#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dqwall/starcalc/spectral.hpp"
#include "dqwall/starcalc/star.hpp"

using namespace dqwall::starcalc;

namespace {

constexpr double kPi = std::numbers::pi;

PhaseField gaussian(const PhaseGrid& g, double x0 = 0.0, double p0 = 0.0, double sx = 1.0, double sp = 1.0) {
    return PhaseField::sample(g, [=](double x, double p) {
        return cdouble(std::exp(-(x - x0) * (x - x0) / (sx * sx) - (p - p0) * (p - p0) / (sp * sp)));
    });
}

// Grid on which the width-6 Gaussian in p decays and the order-12 series converges for beta <= 2.
PhaseGrid wide_p_grid() { return {-8.0, 8.0, 64, -48.0, 48.0, 256}; }

PhaseField random_gaussian(std::mt19937_64& rng, const PhaseGrid& g) {
    std::uniform_real_distribution<double> c(-1.5, 1.5), w(0.8, 1.4);
    return gaussian(g, c(rng), c(rng), w(rng), w(rng));
}

}  // namespace

TEST(PhaseGrid, RejectsBadSizes) {
    EXPECT_THROW(PhaseGrid(-1, 1, 100, -1, 1, 64), std::invalid_argument);
    EXPECT_THROW(PhaseGrid(-1, 1, 32, -1, 1, 64), std::invalid_argument);
    EXPECT_THROW(PhaseGrid(-1, 1, 64, -1, 1, 8192), std::invalid_argument);
    EXPECT_THROW(PhaseGrid(1, -1, 64, -1, 1, 64), std::invalid_argument);
    EXPECT_NO_THROW(PhaseGrid(-1, 1, 64, -1, 1, 4096));
}

TEST(PhaseField, DecayFlags) {
    const auto g = PhaseGrid::standard();
    const auto f = gaussian(g);
    EXPECT_TRUE(f.decays_in_x());
    EXPECT_TRUE(f.decays_in_p());
    const auto h = PhaseField::sample(g, [](double x, double) { return cdouble(std::exp(-x * x)); });
    EXPECT_TRUE(h.decays_in_x());
    EXPECT_FALSE(h.decays_in_p());
}

TEST(PhaseField, RejectsNonFinite) {
    const auto g = PhaseGrid::standard();
    EXPECT_THROW(PhaseField::sample(g, [](double, double) { return cdouble(NAN); }), std::domain_error);
}

TEST(SpectralDx, GaussianDerivative) {
    const auto g = PhaseGrid::standard();
    const auto f = PhaseField::sample(g, [](double x, double p) { return cdouble(std::exp(-x * x - p * p)); });
    const auto expected = f.times([](double x, double) { return cdouble(-2.0 * x); });
    EXPECT_LE((spectral_dx(f, 1) - expected).max_abs(), 1e-9);
    const auto second = f.times([](double x, double) { return cdouble(4.0 * x * x - 2.0); });
    EXPECT_LE((spectral_dx(f, 2) - second).max_abs(), 1e-9);
    const auto fourth = f.times([](double x, double) { return cdouble(16 * std::pow(x, 4) - 48 * x * x + 12); });
    EXPECT_LE((spectral_dx(f, 4) - fourth).max_abs(), 1e-8);
}

TEST(SpectralDx, ConstantInXGivesZero) {
    const auto g = PhaseGrid::standard();
    const auto f = PhaseField::sample(g, [](double, double p) { return cdouble(std::exp(-p * p)); });
    EXPECT_LE(spectral_dx(f, 1).max_abs(), 1e-14);
    EXPECT_LE(spectral_dx(f, 3).max_abs(), 1e-14);
}

TEST(SpectralDx, Linear) {
    const auto g = PhaseGrid::standard();
    std::mt19937_64 rng(3);
    const auto f = random_gaussian(rng, g), h = random_gaussian(rng, g);
    const cdouble a(0.7, -1.2), b(-2.5, 0.3);
    const auto lhs = spectral_dx(a * f + b * h, 2);
    const auto rhs = a * spectral_dx(f, 2) + b * spectral_dx(h, 2);
    // round-off in the top modes is amplified by k^2 ~ 2500
    EXPECT_LE((lhs - rhs).max_abs(), 1e-12 * rhs.max_abs());
}

TEST(SpectralDx, BoundaryViolation) {
    const auto g = PhaseGrid::standard();
    const auto f = PhaseField::sample(g, [](double x, double p) { return cdouble(x * std::exp(-p * p)); });
    EXPECT_THROW(spectral_dx(f, 1), std::domain_error);
    EXPECT_THROW(spectral_dx(gaussian(g), 5), std::out_of_range);
}

TEST(SpectralDp, GaussianDerivative) {
    const auto g = PhaseGrid::standard();
    const auto f = gaussian(g);
    const auto expected = f.times([](double, double p) { return cdouble(-2.0 * p); });
    EXPECT_LE((spectral_dp(f, 1) - expected).max_abs(), 1e-9);
}

TEST(ImagPShift, CompletedSquare) {
    const auto g = PhaseGrid::standard();
    const auto f = PhaseField::sample(g, [](double, double p) { return cdouble(std::exp(-p * p)); });
    for (double beta : {0.3, 0.5, 1.0}) {
        const auto expected = PhaseField::sample(g, [beta](double, double p) {
            return std::exp(beta * beta - p * p) * cdouble(std::cos(2 * beta * p), -std::sin(2 * beta * p));
        });
        EXPECT_LE((imag_p_shift(f, beta) - expected).max_abs(), 1e-8) << beta;
    }
}

TEST(ImagPShift, ZeroIsIdentity) {
    const auto g = PhaseGrid::standard();
    const auto f = gaussian(g, 0.3, -0.2);
    EXPECT_EQ((imag_p_shift(f, 0.0) - f).max_abs(), 0.0);
}

TEST(ImagPShift, InverseShift) {
    const auto g = PhaseGrid::standard();
    std::mt19937_64 rng(5);
    const auto f = random_gaussian(rng, g);
    for (double beta : {0.5, 1.0})
        EXPECT_LE((imag_p_shift(imag_p_shift(f, beta), -beta) - f).max_abs(), 1e-8) << beta;
}

TEST(ImagPShift, DynamicRangeExceeded) {
    const auto g = PhaseGrid::standard();
    const auto f = PhaseField::sample(g, [](double x, double p) { return cdouble(p * std::exp(-x * x)); });
    EXPECT_THROW(imag_p_shift(f, 5.0), std::range_error);
}

TEST(ImagPShift, MatchesSinAndCosSeries) {
    const auto g = wide_p_grid();
    const auto f = gaussian(g, 0.0, 0.0, 1.0, 6.0);
    for (double beta : {0.5, 1.0, 2.0}) {
        const auto up = imag_p_shift(f, beta), down = imag_p_shift(f, -beta);
        const auto [c, s] = trig_shift_series(f, beta);
        EXPECT_LE((cdouble(0.5) * (up + down) - c).max_abs(), 1e-8) << beta;
        EXPECT_LE((cdouble(0.0, -0.5) * (up - down) - s).max_abs(), 1e-8) << beta;
    }
}

TEST(BoppKinetic, ImaginaryPartOfGaussian) {
    const auto g = PhaseGrid::standard();
    const auto f = gaussian(g);
    const auto k = bopp_kinetic(f);
    const auto expected = f.times([](double x, double p) { return cdouble(2.0 * x * p); });
    EXPECT_LE((k.imag_part() - expected).max_abs(), 1e-8);
    const auto re = f.times([](double, double p) { return cdouble(p * p); }) - cdouble(0.25) * spectral_dx(f, 2);
    EXPECT_LE((k.real_part() - re).max_abs(), 1e-12);
}

TEST(BoppKinetic, XIndependentField) {
    const auto g = PhaseGrid::standard();
    const auto f = PhaseField::sample(g, [](double, double p) { return cdouble(std::exp(-p * p)); });
    const auto expected = f.times([](double, double p) { return cdouble(p * p); });
    EXPECT_LE((bopp_kinetic(f) - expected).max_abs(), 1e-13);
}

TEST(BoppKinetic, RightIsConjugateForRealFields) {
    const auto g = PhaseGrid::standard();
    std::mt19937_64 rng(9);
    const auto f = random_gaussian(rng, g);
    EXPECT_LE((bopp_kinetic(f, Side::right) - bopp_kinetic(f).conj()).max_abs(), 1e-13);
}

TEST(StarPolyPotential, UnitPotential) {
    const auto g = PhaseGrid::standard();
    const auto f = gaussian(g, 0.2);
    EXPECT_EQ((star_poly_potential({1.0}, f) - f).max_abs(), 0.0);
}

TEST(StarPolyPotential, HarmonicOnGaussian) {
    const auto g = PhaseGrid::standard();
    const auto f = gaussian(g);
    const auto left = star_poly_potential({0.0, 0.0, 1.0}, f);
    // x d/dp f = -2xp f
    const auto im = f.times([](double x, double p) { return cdouble(-2.0 * x * p); });
    EXPECT_LE((left.imag_part() - im).max_abs(), 1e-8);
    const auto re = f.times([](double x, double) { return cdouble(x * x); }) - cdouble(0.25) * spectral_dp(f, 2);
    EXPECT_LE((left.real_part() - re).max_abs(), 1e-12);
    const auto right = star_poly_potential({0.0, 0.0, 1.0}, f, Side::right);
    EXPECT_LE((right.imag_part() + im).max_abs(), 1e-8);
}

TEST(StarPolyPotential, DegreeTooHigh) {
    const auto g = PhaseGrid::standard();
    EXPECT_THROW(star_poly_potential({0, 0, 0, 1}, gaussian(g)), std::invalid_argument);
}

TEST(StarGeneral, UnitOfTheAlgebra) {
    const auto g = PhaseGrid::standard();
    std::mt19937_64 rng(1);
    const auto f = random_gaussian(rng, g);
    const auto one = PhaseField::sample(g, [](double, double) { return cdouble(1.0); });
    EXPECT_LE((star_general(f, one) - f).max_abs(), 1e-13);
    EXPECT_LE((star_general(one, f) - f).max_abs(), 1e-13);
}

TEST(StarGeneral, GroundStateIsIdempotent) {
    const auto g = PhaseGrid::standard();
    const auto rho0 = (1.0 / kPi) * gaussian(g);
    EXPECT_LE((star_general(rho0, rho0) - cdouble(1.0 / (2.0 * kPi)) * rho0).max_abs(), 1e-6);
}

TEST(StarGeneral, DisplacedGaussians) {
    // Gaussian integral of the Moyal kernel, done by hand:
    // e^{-(x-a)^2-p^2} * e^{-x^2-(p-b)^2} = (1/2) exp(-[(x-a)^2 + p^2 + x^2 + (p-b)^2]/2 - i(bx + ap - ab))
    const auto g = PhaseGrid::standard();
    const double a = 0.6, b = -0.4;
    const auto f = gaussian(g, a, 0.0), h = gaussian(g, 0.0, b);
    const auto expected = PhaseField::sample(g, [=](double x, double p) {
        const double q = (x - a) * (x - a) + p * p + x * x + (p - b) * (p - b);
        return 0.5 * std::exp(-0.5 * q) * std::polar(1.0, -(b * x + a * p - a * b));
    });
    EXPECT_LE((star_general(f, h) - expected).max_abs(), 1e-6);
}

TEST(StarGeneral, Associative) {
    const auto g = PhaseGrid::standard();
    std::mt19937_64 rng(17);
    const auto f = random_gaussian(rng, g), h = random_gaussian(rng, g), k = random_gaussian(rng, g);
    const auto lhs = star_general(star_general(f, h), k);
    const auto rhs = star_general(f, star_general(h, k));
    EXPECT_LE((lhs - rhs).max_abs(), 1e-6);
}

TEST(StarGeneral, TraceProperty) {
    const auto g = PhaseGrid::standard();
    std::mt19937_64 rng(23);
    for (int t = 0; t < 3; ++t) {
        const auto f = random_gaussian(rng, g), h = random_gaussian(rng, g);
        EXPECT_LE(std::abs(star_general(f, h).integral() - (f * h).integral()), 1e-6);
    }
}

TEST(StarGeneral, Hermiticity) {
    const auto g = PhaseGrid::standard();
    std::mt19937_64 rng(29);
    const auto f = random_gaussian(rng, g), h = random_gaussian(rng, g);
    EXPECT_LE((star_general(f, h).conj() - star_general(h, f)).max_abs(), 1e-10);
}

TEST(StarGeneral, AliasingDetected) {
    const auto g = PhaseGrid::standard();
    const auto narrow = gaussian(g, 0.0, 0.0, 0.1, 1.0);
    EXPECT_THROW(star_general(narrow, gaussian(g)), std::range_error);
}

TEST(StarGeneral, GridMismatch) {
    const PhaseGrid a = PhaseGrid::standard(), b(-8, 8, 128, -8, 8, 256);
    EXPECT_THROW(star_general(gaussian(a), gaussian(b)), std::invalid_argument);
}
